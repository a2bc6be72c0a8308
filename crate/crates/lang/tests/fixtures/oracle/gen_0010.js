function f3(p4) {
    let w5 = 0;
    while (w5 < 0) {
        w5++;
    }
    let w6 = 0;
    while (w6 < 0) {
        w6++;
    }
    return -4;
}
function f7(p8, p9) {
    return -p9;
}
let g1 = 8;
let g2 = (g1) / (f7(g1, 6));
let v10 = 3;
let w11 = 0;
while (w11 < 3) {
    w11++;
}
console.log(g2, (v10));
for (let i12 = 0; i12 < 0; i12++) {
    if ((1) !== v10) {
        console.log((3 / g1) % 4, f3(i12));
        let v13 = (g2 + g2);
    }
    g1 *= (-g1) % 7;
}
console.log((8) % (2 * g1));
let v14 = (f7(g1, 2));
g1++;
console.log(f3(g1));
