robot.setRobotId(0);
let n = 0;
while (n < 4) {
  robot.moveForward();
  robot.turnLeft();
  n = n + 1;
}
