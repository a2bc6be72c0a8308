console.log("10" - 3, "a" - 1, "5" * "4", "9" / "3", " 12 " * 1, "" * 7);
console.log("0x1f" - 0, "1e3" - 0, "Infinity" * 1, "-Infinity" - 0);
