let n = 0 / 0;
console.log(n === n, n < 1, n >= 1, n == n);
console.log(n + 1, -n, n * 0);
