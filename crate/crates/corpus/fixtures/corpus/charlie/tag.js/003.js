robot.setRobotId(2);
let a = 1;
let a = 2;
