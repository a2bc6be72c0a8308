function greet(name) { return "hi " + name; }
console.log("f: " + greet);
console.log(greet);
console.log(greet("bob"));
