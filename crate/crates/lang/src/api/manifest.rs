use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Setup,
    Beginner,
    Intermediate,
    Advanced,
    Skill,
    Sense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResultKind {
    /// Motion and skills return nothing.
    None,
    Number,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Number,
    Boolean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiEntry {
    pub name: String,
    pub arity: usize,
    pub layer: Layer,
    pub result: ResultKind,
    pub params: Vec<String>,
    #[serde(default)]
    pub param_kinds: Vec<ParamKind>,
    #[serde(default)]
    pub doc: String,
}

/// The `robot` namespace as a machine-readable document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiManifest {
    pub namespace: String,
    pub units: String,
    pub entries: Vec<ApiEntry>,
}

type Row = (&'static str, Layer, ResultKind, &'static [&'static str], &'static str);

use Layer::*;
use ResultKind::{None as Nothing, Number};

pub(crate) const CATALOG: &[Row] = &[
    ("setRobotId", Setup, Nothing, &["n"], "Choose which robot this program controls."),
    ("moveForward", Beginner, Nothing, &[], "Move one grid cell in the direction the robot faces."),
    ("turnLeft", Beginner, Nothing, &[], "Turn a quarter turn counter-clockwise."),
    ("turnRight", Beginner, Nothing, &[], "Turn a quarter turn clockwise."),
    ("moveByXCells", Intermediate, Nothing, &["cx"], "Move cx grid cells along x."),
    ("moveByYCells", Intermediate, Nothing, &["cy"], "Move cy grid cells along y."),
    ("moveByX", Advanced, Nothing, &["dx"], "Move dx meters along x."),
    ("moveByY", Advanced, Nothing, &["dy"], "Move dy meters along y."),
    ("moveByXY", Advanced, Nothing, &["dx", "dy"], "Move by (dx, dy) meters."),
    ("turnBy", Advanced, Nothing, &["deg"], "Turn by deg degrees counter-clockwise."),
    ("moveBy", Advanced, Nothing, &["dx", "dy", "deg"], "Move by (dx, dy) meters and turn by deg degrees."),
    ("moveToX", Advanced, Nothing, &["x"], "Move to field coordinate x."),
    ("moveToY", Advanced, Nothing, &["y"], "Move to field coordinate y."),
    ("moveToXY", Advanced, Nothing, &["x", "y"], "Move to (x, y)."),
    ("turnTo", Advanced, Nothing, &["deg"], "Face the absolute heading deg."),
    ("moveTo", Advanced, Nothing, &["x", "y", "deg"], "Move to (x, y) facing deg."),
    ("kick", Skill, Nothing, &["power"], "Kick the ball with power between 0 and 1."),
    ("dribble", Skill, Nothing, &["on"], "Switch the dribbler on (true) or off (false)."),
    ("catchBall", Skill, Nothing, &[], "Drive to the ball and hold it with the dribbler."),
    ("block", Skill, Nothing, &[], "Move between the ball and the own goal."),
    ("getPosX", Sense, Number, &[], "The robot's x position in meters."),
    ("getPosY", Sense, Number, &[], "The robot's y position in meters."),
    ("getAngle", Sense, Number, &[], "The robot's heading in degrees."),
    ("getBallPosX", Sense, Number, &[], "The ball's x position in meters."),
    ("getBallPosY", Sense, Number, &[], "The ball's y position in meters."),
    ("getBallVelX", Sense, Number, &[], "The ball's x velocity in meters per second."),
    ("getBallVelY", Sense, Number, &[], "The ball's y velocity in meters per second."),
];

/// Index of a builtin in the catalog.
pub(crate) fn catalog_index(name: &str) -> Option<usize> {
    CATALOG.iter().position(|row| row.0 == name)
}

pub(crate) fn catalog_name(index: usize) -> &'static str {
    CATALOG[index].0
}

pub fn api_catalog() -> ApiManifest {
    let entries = CATALOG
        .iter()
        .map(|&(name, layer, result, params, doc)| ApiEntry {
            name: name.to_string(),
            arity: params.len(),
            layer,
            result,
            params: params.iter().map(|p| p.to_string()).collect(),
            param_kinds: params
                .iter()
                .map(|p| if *p == "on" { ParamKind::Boolean } else { ParamKind::Number })
                .collect(),
            doc: doc.to_string(),
        })
        .collect();
    ApiManifest { namespace: "robot".into(), units: "meters, degrees counter-clockwise from +x, origin at field center".into(), entries }
}

impl ApiManifest {
    pub fn get(&self, name: &str) -> Option<&ApiEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let m = api_catalog();
        assert_eq!(m.get("moveTo").unwrap().arity, 3);
        let g = m.get("getBallPosX").unwrap();
        assert_eq!((g.arity, g.layer), (0, Layer::Sense));
        let f = m.get("moveForward").unwrap();
        assert_eq!((f.arity, f.layer), (0, Layer::Beginner));
        assert_eq!(m.get("dribble").unwrap().param_kinds, vec![ParamKind::Boolean]);
    }

    #[test]
    fn json_roundtrip() {
        let m = api_catalog();
        assert_eq!(ApiManifest::from_json(&m.to_json()).unwrap(), m);
    }
}
