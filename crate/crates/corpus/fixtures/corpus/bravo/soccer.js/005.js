robot.setRobotId(1);
console.log('unterminated);
