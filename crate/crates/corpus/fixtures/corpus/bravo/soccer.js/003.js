robot.setRobotId(1);
let label = 'x' - 1;
console.log(label);
