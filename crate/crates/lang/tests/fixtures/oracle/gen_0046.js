function f5(p6, p7) {
    console.log(100);
    return 4;
}
let g1 = (f5(6, 5)) % 0.5;
g1--;
let g2 = (f5(g1, g1)) / (-g1);
let g3 = -(g1);
let g4 = g3;
g2 *= (g4);
let v8 = g2 + g4;
g3 /= -g4;
g1++;
g3 %= (g1) / 0;
let w9 = 0;
while (w9 < 1) {
    f5((4), (g2));
    w9++;
}
g2 += (-g4) * (9 / 0.5);
