function f3(p4, p5) {
    2.25;
    console.log((0));
    return;
}
let g1 = f3(0.5, 100);
for (let i6 = 0; i6 < 0; i6++) {
    let v7 = (-i6);
    f3(6, (i6));
}
let g2 = g1 / (g1);
let v8 = ((4));
v8 += -(0 >= g1);
let v9 = (v8) * (g2);
for (let i10 = 0; i10 < 1; i10++) {
    console.log(-!g1, (g1 * 100));
    if (i10 === g2) {
        console.log(0.5 !== (-g1));
        g1 -= 4;
    }
}
g1--;
f3(v9, v8);
for (let i11 = 0; i11 < 0; i11++) {
    g1 += v9 / (f3(v8, 0));
    v8 += g2;
}
if ((g2) < g1) {
    console.log((f3(6, v8)) % (f3(v8, v9)));
    for (let i12 = 0; i12 < 2; i12++) {
    }
} else {
}
if ((v9) !== g1) {
    let v13 = (0.5 + g2);
}
