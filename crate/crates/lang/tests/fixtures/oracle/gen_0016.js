function f4(p5, p6) {
    return (p6);
}
function f7() {
    return (0.5 * 2.25) - (f4(1, 2));
}
let g1 = (5 * 0.5);
let g2 = f7();
g1 = g1;
let g3 = g1;
let v8 = g2;
g3--;
for (let i9 = 0; i9 < 3; i9++) {
    console.log((6 + 5), -g2);
}
g1 *= (2.25 / 9);
