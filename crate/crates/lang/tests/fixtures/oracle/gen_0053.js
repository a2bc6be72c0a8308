let g1 = 5;
let g2 = (2.25);
let g3 = (g1) + 9;
console.log(g3);
let w4 = 0;
while (w4 < 1) {
    console.log((8));
    w4++;
}
let v5 = 4;
let v6 = ((g1));
g3 += (g1 * 0);
g2 += false;
v5++;
