console.log(7 % 3, -7 % 3, 7 % -3, 5.5 % 2, 1 % 0, 0 % 5, -0 % 5);
