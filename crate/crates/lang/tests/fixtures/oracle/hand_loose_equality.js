console.log(1 == "1", 0 == "", 0 == "0", "" == "0", true == 1, false == "0");
let u;
console.log(u == 0, u == u, "a" != "b", 1 != true);
