let a = 1;
if (a = 0) { console.log("then"); } else { console.log("else", a); }
let b;
while (b = 0) { console.log("never"); }
console.log(b);
