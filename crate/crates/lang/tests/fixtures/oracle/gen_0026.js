let g1;
let w4 = 0;
while (w4 < 2) {
    let v5 = g1;
    v5 %= (w4 - 8);
    w4++;
}
let g2 = 0;
console.log(-3, (0));
let g3 = g1;
if (7 <= g3) {
    let v6 = !g2 || (g2 - g2);
    let v7 = (2.25);
} else {
    g2 -= 5;
}
if ((g3 / g3) + (g3 / 6)) {
}
let w8 = 0;
while (w8 < 3) {
    g2 = -g1;
    console.log((5), g1);
    w8++;
}
