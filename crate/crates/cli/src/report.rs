use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exit {
    Ok,
    Input,
    Negative,
    Undecided,
    Mismatch,
}

impl Exit {
    pub fn code(self) -> i32 {
        match self {
            Exit::Ok => 0,
            Exit::Input => 2,
            Exit::Negative => 3,
            Exit::Undecided => 4,
            Exit::Mismatch => 5,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Environment {
    pub version: &'static str,
    pub seed: u64,
}

/// Everything one invocation prints in JSON mode.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub arguments: Value,
    pub steps: Vec<Step>,
    pub result: Value,
    pub exit: Exit,
    pub environment: Environment,
    #[serde(skip)]
    pub summary: String,
}

/// Records named steps; wall-clock times are kept only when asked for, so
/// default output is identical across runs.
pub struct Timer {
    timed: bool,
    steps: Vec<Step>,
}

impl Timer {
    pub fn new(timed: bool) -> Self {
        Timer {
            timed,
            steps: Vec::new(),
        }
    }

    pub fn step<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.steps.push(Step {
            name: name.to_string(),
            elapsed_ms: self.timed.then(|| start.elapsed().as_millis()),
        });
        out
    }

    pub fn finish(self) -> Vec<Step> {
        self.steps
    }
}
