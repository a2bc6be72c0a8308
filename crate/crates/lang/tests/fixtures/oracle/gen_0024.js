function f5(p6) {
    return (p6 / p6) * p6;
}
function f7() {
    return;
}
let g1 = ((0.5));
let g2 = (-g1) * (g1 + g1);
let g3 = ((g2));
if ((g3) !== f5(false)) {
} else {
    g2 -= f7();
    f7();
}
let g4 = ((g2));
for (let i8 = 0; i8 < 1; i8++) {
}
console.log(g4, (g3));
console.log(f7());
console.log(-(g4), f5(g3));
console.log(g2, 8);
console.log(f7());
g3 -= (-g1) + g4;
