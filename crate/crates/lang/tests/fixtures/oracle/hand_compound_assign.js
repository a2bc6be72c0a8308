let x = 10;
x += 5;
x -= 3;
x *= 2;
x /= 4;
x %= 4;
console.log(x);
let s = "a";
s += 1;
s += true;
console.log(s);
let n = "5";
n++;
console.log(n);
