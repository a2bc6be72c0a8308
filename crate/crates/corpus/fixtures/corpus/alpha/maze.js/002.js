robot.setRobotId(0);
robot.moveForward(;
robot.turnLeft();
