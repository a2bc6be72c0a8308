let x = 1;
{
    let x = 2;
    {
        let x = 3;
        console.log(x);
    }
    console.log(x);
}
console.log(x);
if (x === 1) {
    let y = "inner";
    console.log(y);
} else if (x === 2) {
    console.log("two");
} else {
    console.log("other");
}
