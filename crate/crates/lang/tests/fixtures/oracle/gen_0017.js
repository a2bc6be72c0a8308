function f4() {
    7;
    return (-1) * 3;
}
function f5(p6, p7) {
    console.log(-(p6 / 5));
    let v8;
    return -(p6 === v8);
}
let g1 = 1e3;
g1--;
let g2 = -(2);
let w9 = 0;
while (w9 < 2) {
    console.log(false);
    w9++;
}
let g3 = g1 * (g1 + 1);
for (let i10 = 0; i10 < 0; i10++) {
    if (g2 >= 8) {
        g1 %= g2;
        console.log(!(i10 + i10), g3);
    }
}
let v11 = (f5(g1, 0.5)) / g1;
let v12 = (-1e3) / 9;
g3++;
