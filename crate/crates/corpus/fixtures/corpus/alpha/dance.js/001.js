robot.setRobotId(0);
robot.moveTo(100, 100);
