//! Certificate envelope shared by all commands.

use serde::Serialize;
use serde_json::Value;

pub const TOOL: &str = "repdim";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InputHash {
    pub name: String,
    pub hash: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<InputHash>,
    pub seed: u64,
    pub field: String,
    pub pass: Option<bool>,
    pub witness: Option<String>,
    pub result: Value,
}

impl Certificate {
    pub fn new(command: &str, inputs: Vec<InputHash>, seed: u64, field: String, result: impl Serialize) -> Certificate {
        Certificate {
            tool: TOOL,
            version: VERSION,
            command: command.to_string(),
            inputs,
            seed,
            field,
            pass: None,
            witness: None,
            result: serde_json::to_value(result).expect("serializable result"),
        }
    }

    pub fn verdict(mut self, pass: bool, witness: Option<String>) -> Certificate {
        self.pass = Some(pass);
        self.witness = witness;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

/// Dimension vector and content hash of a module.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ModuleRef {
    pub dims: Vec<usize>,
    pub hash: String,
}

impl ModuleRef {
    pub fn of(m: &crate::modcat::Module) -> ModuleRef {
        ModuleRef { dims: m.dims().to_vec(), hash: m.content_hash() }
    }
}
