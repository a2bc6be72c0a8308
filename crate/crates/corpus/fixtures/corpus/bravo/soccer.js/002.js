robot.setRobotId(1);
let target;
robot.moveToX(target);
robot.kick(1);
