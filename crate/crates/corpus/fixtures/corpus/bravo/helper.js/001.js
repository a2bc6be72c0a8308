robot.setRobotId(1);
let bx = robot.getBallPoz();
console.log(bx);
