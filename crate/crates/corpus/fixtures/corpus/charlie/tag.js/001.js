robot.setRobotId(2);
if (1) {
  robot.turnLeft();
}
