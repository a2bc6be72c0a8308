let reading = "";
if (reading == 0) {
    console.log("ball found at distance", reading);
}
