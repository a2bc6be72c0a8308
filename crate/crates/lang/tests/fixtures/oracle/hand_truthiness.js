let n = 0;
if (n) { console.log("zero truthy"); } else { console.log("zero falsy"); }
if ("") { console.log("empty truthy"); } else { console.log("empty falsy"); }
if ("0") { console.log("string zero truthy"); }
let u;
if (u) { console.log("u"); } else { console.log("undefined falsy"); }
if (0 / 0) { console.log("nan"); } else { console.log("NaN falsy"); }
