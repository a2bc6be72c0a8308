let g1 = 0.5;
console.log(8 - (g1 - g1), 5);
let g2 = g1 % (g1 - 0.5);
g1 -= g2;
g1++;
console.log(g2 * 1);
