console.log(0.1 + 0.2, 1 / 3, 2 / 3, 100 / 7);
console.log(1e21, 1e20, 123456789012345680000, 0.000001, 0.0000001);
console.log(-1e-7, 5e-324, 1.7976931348623157e308, 2e308);
console.log(-0, 0 * -1, 1 / -0);
