let g1 = 4;
3;
let g2 = -(3);
let g3 = ((g2));
let g4 = g3 + 8;
6;
if (3 >= (g4)) {
    g4 %= g2;
} else {
    console.log(-(5));
    console.log(0.5);
}
g4 += g4;
6;
2.25;
for (let i5 = 0; i5 < 0; i5++) {
    g1 *= 5 - 100;
    g1--;
}
2;
