//! Machine-readable description of the run configuration.

use serde_json::{json, Value};

use crate::config::CommandName;

fn radial_function() -> Value {
    json!({
        "oneOf": [
            { "type": "object", "required": ["preset", "value"], "additionalProperties": false,
              "properties": { "preset": { "const": "constant" }, "value": { "type": "number", "minimum": 0 } } },
            { "type": "object", "required": ["preset", "amplitude", "width"], "additionalProperties": false,
              "properties": { "preset": { "const": "gaussian-bump" }, "amplitude": { "type": "number", "minimum": 0 },
                              "width": { "type": "number", "exclusiveMinimum": 0 }, "center": { "type": "number", "default": 0 },
                              "floor": { "type": "number", "minimum": 0, "default": 0 } } },
            { "type": "object", "required": ["preset", "amplitude", "width"], "additionalProperties": false,
              "properties": { "preset": { "const": "double-bump" }, "amplitude": { "type": "number", "minimum": 0 },
                              "width": { "type": "number", "exclusiveMinimum": 0 },
                              "floor": { "type": "number", "minimum": 0, "default": 0 } } },
            { "type": "object", "required": ["preset", "theta", "values"], "additionalProperties": false,
              "properties": { "preset": { "const": "samples" }, "theta": { "type": "array", "items": { "type": "number" } },
                              "values": { "type": "array", "items": { "type": "number", "minimum": 0 } } } }
        ]
    })
}

/// JSON Schema of [`crate::config::RunConfig`].
pub fn config_schema() -> Value {
    let commands: Vec<&str> = CommandName::ALL.iter().map(|c| c.as_str()).collect();
    let uint = json!({ "type": "integer", "minimum": 0 });
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "ymlab run configuration",
        "type": "object",
        "required": ["command"],
        "additionalProperties": false,
        "properties": {
            "command": { "enum": commands },
            "seed": { "type": "integer", "minimum": 0, "description": "required by liealg verify" },
            "strict": { "type": "boolean", "default": false, "description": "turn warnings into failures" },
            "output": {
                "type": "object", "additionalProperties": false,
                "properties": {
                    "path": { "type": "string" },
                    "format": { "enum": ["json", "csv"], "default": "json" }
                }
            },
            "liealg": {
                "type": "object", "additionalProperties": false,
                "properties": {
                    "algebra": { "type": "string", "default": "su2" },
                    "n": { "type": "integer", "minimum": 2, "maximum": 8, "default": 4 },
                    "samples": { "type": "integer", "minimum": 1, "default": 10000 },
                    "gamma_starts": { "type": "integer", "minimum": 1, "default": 64 },
                    "gamma_steps": { "type": "integer", "minimum": 0, "default": 200 }
                }
            },
            "quadrupole": {
                "type": "object", "additionalProperties": false,
                "properties": {
                    "l": { "type": "integer", "default": 3, "description": "odd n+ of the (n+, 3) bundle" },
                    "l_list": { "type": "array", "items": { "type": "integer" } },
                    "grid": { "type": "integer", "minimum": 64, "default": 1024 },
                    "delta": { "type": "number", "exclusiveMinimum": 0 },
                    "max_iters": uint,
                    "tol": { "type": "number", "exclusiveMinimum": 0, "default": 1e-6 },
                    "energy_form": { "enum": ["squared", "literal"], "default": "squared" },
                    "profile": { "type": "string", "description": "profile text file to start from" },
                    "profile_out": { "type": "string" }
                }
            },
            "spectral": {
                "type": "object", "additionalProperties": false,
                "properties": {
                    "potential": radial_function(),
                    "potential_file": { "type": "string", "description": "two-column theta V text" },
                    "epsilon": { "type": "number", "exclusiveMinimum": 0 },
                    "grid": { "type": "integer", "minimum": 16, "default": 2000 },
                    "rank": { "type": "integer", "minimum": 1, "default": 1 },
                    "t": { "type": "array", "items": { "type": "number", "exclusiveMinimum": 0 } },
                    "n_eigs": { "type": "integer", "minimum": 1, "default": 10 },
                    "gauge": {
                        "type": "object", "additionalProperties": false,
                        "properties": {
                            "weyl": radial_function(),
                            "curvature": radial_function(),
                            "gamma1": { "type": "number", "exclusiveMinimum": 0 },
                            "t_points": { "type": "integer", "minimum": 2, "default": 11 }
                        }
                    }
                }
            },
            "bounds": {
                "type": "object", "additionalProperties": false,
                "properties": {
                    "record": { "enum": ["S4", "CP2", "S2xS2", "S3xS1"], "default": "S4" },
                    "record_file": { "type": "string" },
                    "int_f2": { "type": "number", "minimum": 0 },
                    "int_wf": { "type": "number", "minimum": 0, "default": 0 },
                    "dim": { "type": "integer", "minimum": 1, "default": 3 },
                    "allow_external": { "type": "boolean", "default": false }
                }
            }
        }
    })
}
