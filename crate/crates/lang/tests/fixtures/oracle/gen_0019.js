let g1;
let g2 = g1;
let w3 = 0;
while (w3 < 2) {
    g2 = ((0.5));
    console.log((g2 + g1) % (7 + 2.25), 6);
    w3++;
}
g1 += g1;
let v4 = g2;
if ((g2 < 1) || !(1 === g2)) {
}
g2 *= 2.25;
g2++;
