robot.setRobotId(1);
let k = 0;
if (k = 1) {
  robot.kick(1);
}
while (robot.getPosX > 0) {
  robot.moveByX(-0.1);
}
