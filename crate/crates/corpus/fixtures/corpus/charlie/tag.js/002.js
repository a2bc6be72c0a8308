robot.setRobotId(2);
let s = 'a' + 'b';
function less(a) {
  return a - 1;
}
console.log(less(s));
