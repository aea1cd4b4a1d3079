use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Decided = 0,
    Internal = 1,
    Unknown = 2,
    Precondition = 3,
    Exhausted = 4,
    Parse = 5,
}

/// Outcome of one query. Serializes to the fixed field set
/// `{command, inputs, verdict, certificate, verified, elapsed_ms, error}`.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub verdict: Option<String>,
    pub certificate: Option<Value>,
    pub verified: Option<bool>,
    pub elapsed_ms: f64,
    pub error: Option<(String, String)>,
    pub code: ExitCode,
}

impl Report {
    pub fn exit_code(&self) -> ExitCode {
        self.code
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "certificate": self.certificate,
            "verified": self.verified,
            "elapsed_ms": self.elapsed_ms,
            "error": self.error.as_ref().map(|(kind, message)| json!({"kind": kind, "message": message})),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain JSON values") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(v) = &self.verdict {
            out.push_str(&format!("verdict: {v}\n"));
        }
        if let Some(Value::Object(cert)) = &self.certificate {
            out.push_str("certificate:\n");
            write_fields(&mut out, cert, 1);
        }
        if let Some(v) = self.verified {
            out.push_str(&format!("verified: {v}\n"));
        }
        if let Some((kind, message)) = &self.error {
            out.push_str(&format!("error ({kind}): {message}\n"));
        }
        out.push_str(&format!("elapsed: {:.1} ms\n", self.elapsed_ms));
        out
    }
}

fn write_fields(out: &mut String, obj: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in obj {
        match v {
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{k}:\n"));
                write_fields(out, inner, depth + 1);
            }
            Value::Array(items) => {
                out.push_str(&format!("{pad}{k}:\n"));
                for item in items {
                    out.push_str(&format!("{pad}  - {}\n", scalar(item)));
                }
            }
            other => out.push_str(&format!("{pad}{k}: {}\n", scalar(other))),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
