function moveBy(dx, dy) {
    return dx + dy;
}
console.log("moved", moveBy(1));
