let x;
console.log(x);
console.log(x + 1);
console.log(x + "!");
let y = x;
console.log(y === x);
