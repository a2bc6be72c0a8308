robot.setRobotId(1);
robot.catchBall();
robot.kick(1);
