use serde_json::Value;

pub mod complex;
pub mod cone;
pub mod incidence;
pub mod pitcher;
pub mod ring;

/// Output of a subcommand: the document parts and its text rendering.
pub struct Report {
    pub schema: &'static str,
    pub input: Value,
    pub payload: Value,
    pub text: String,
    pub exit: u8,
}

impl Report {
    pub fn new(schema: &'static str, input: Value, payload: Value, text: String) -> Self {
        Report {
            schema,
            input,
            payload,
            text,
            exit: 0,
        }
    }
}
