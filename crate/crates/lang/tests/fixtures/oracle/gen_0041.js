let g1 = (0 - 1) - 7;
let g2 = ((g1));
let g3 = (7);
for (let i4 = 0; i4 < 0; i4++) {
    console.log((-6) * (g2 + 0), (2) * (i4 - 1));
    g1++;
}
let v5 = g1;
let v6 = v5;
for (let i7 = 0; i7 < 2; i7++) {
}
5;
console.log(-(5 - 100), 4 - (0.5 - v6));
console.log((v5 - g3) % (g2));
