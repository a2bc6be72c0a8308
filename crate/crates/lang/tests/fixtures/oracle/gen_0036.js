function f5() {
    return ((0));
}
let g1 = (f5());
let g2 = 9;
for (let i6 = 0; i6 < 1; i6++) {
}
let g3 = (g2 % g1);
g1++;
let g4 = (g2) - (g2 - 3);
console.log(g4, -(g3));
console.log(g1, (g3));
g2 /= (-g3) - g2;
let v7 = 0.5;
v7 /= v7;
let v8 = (g2) * (1e3 + g4);
let w9 = 0;
while (w9 < 0) {
    v8 *= (w9 + v7);
    w9++;
}
g2 %= g2;
