robot.setRobotId(0);
let n = 0;
if (n == 0) {
  robot.turnLeft();
}
