function f3(p4, p5) {
    0;
    console.log((2.25 / p4), (p4));
    return p4;
}
function f6() {
    f3(4, 5 - 100);
    return (-8);
}
let g1 = -(2);
let g2 = -(1e3 * g1);
let w7 = 0;
while (w7 < 3) {
    let v8 = (w7);
    g2 -= w7;
    w7++;
}
f3(f3(g1, g2), g1 * 5);
g2--;
let w9 = 0;
while (w9 < 2) {
    for (let i10 = 0; i10 < 2; i10++) {
    }
    g1--;
    w9++;
}
