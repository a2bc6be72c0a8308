robot.setRobotId(0);
robot.moveTo(1, 1, 90);
robot.turnTo(180);
console.log('Done');
