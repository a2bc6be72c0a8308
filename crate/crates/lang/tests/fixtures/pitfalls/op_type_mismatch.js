let steps = "3";
let total = steps + 1;
console.log("total steps:", total);
