function f3(p4) {
    1e3;
    2;
    return 1e3;
}
function f5(p6, p7) {
    console.log(((p6)));
    return 5 - (1e3 % p7);
}
let g1 = 7 + (8 + 8);
let g2 = 9;
for (let i8 = 0; i8 < 0; i8++) {
    for (let i9 = 0; i9 < 0; i9++) {
        console.log(f5(g2, i9));
    }
    g2 -= -i8;
}
console.log((g2));
for (let i10 = 0; i10 < 3; i10++) {
}
if ((g2) <= g1) {
    for (let i11 = 0; i11 < 3; i11++) {
    }
    g1 *= g2;
}
console.log(g2, g1);
console.log(g2, (g2 % g1));
