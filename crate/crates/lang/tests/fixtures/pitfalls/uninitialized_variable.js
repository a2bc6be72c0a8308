let speed;
let distance = speed * 2;
console.log("distance:", distance);
