function f3(p4, p5) {
    if (9 <= (p5)) {
    } else {
        2.25;
        8;
    }
    return -p5;
}
function f6(p7, p8) {
    f3(p8 - p7, 0 * 7);
    return p8;
}
let g1 = (f6(0, 3)) % (1e3 - 1e3);
let g2 = (g1 % g1);
console.log(3);
f6((g2), (g1));
console.log(0, (g2));
let w9 = 0;
while (w9 < 1) {
    g2 = (f3(w9, w9)) % (9 - w9);
    g2--;
    w9++;
}
f6(-g2, g1 * 2);
f6((g1), g1);
f6(g1, -0.5);
g1 %= g2 - (g2);
