function f3(p4, p5) {
    if ((p4) === 8) {
        9;
        3;
    } else {
    }
    return (-p4) % (-p5);
}
let g1 = (5);
for (let i6 = 0; i6 < 1; i6++) {
    console.log(i6 + (g1), (-g1) % (g1 / 5));
    console.log((g1), (g1 - g1));
}
let g2 = (g1 - g1) - 9;
let v7 = 4;
let v8 = g2;
if (f3(6, 0) >= g2) {
}
let v9 = f3(5, v8);
let v10 = v9;
for (let i11 = 0; i11 < 2; i11++) {
    let w12 = 0;
    while (w12 < 0) {
        f3((v8), g1);
        w12++;
    }
}
g1 = f3(g2, 2.25);
