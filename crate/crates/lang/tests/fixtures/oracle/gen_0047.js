let g1 = 0.5 + 5;
let g2 = (7 / g1) - "a";
g1 %= (g1 / g2) % (1e3 % g1);
g2 -= (g2);
console.log(1);
g2 /= 9;
g1 *= g2;
for (let i3 = 0; i3 < 1; i3++) {
    console.log(g1);
    for (let i4 = 0; i4 < 1; i4++) {
        let v5 = 4;
    }
}
9;
