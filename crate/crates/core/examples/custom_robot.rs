//! A scaled robot with a payload force, configured from JSON.
//!
//! cargo run --example custom_robot

use prp3::sim::{simulate, SimConfig};

const CONFIG: &str = r#"{
    "scenario": { "name": "diagonal", "x": 0.01, "y": 0.01, "phi": 0.05, "duration": 2.0 },
    "dt": 0.25,
    "params": { "l0": 0.4, "masses": [1.5, 1.0, 4.0], "platform_force": [0.0, -20.0, 0.0] }
}"#;

fn main() -> prp3::Result<()> {
    let cfg = SimConfig::from_json_str(CONFIG)?;
    println!("edge {:.4} m, total mass {:.2} kg", cfg.params.edge_length(), cfg.params.total_mass());
    for s in simulate(&cfg)?.samples {
        let f: Vec<String> = s.dynamics.legs.iter().map(|l| format!("{:+8.3}", l.f10)).collect();
        println!("t {:.2}  f10 [{}] N  sum p {:+.4} W  NE gap {:.1e}", s.t, f.join(" "), s.dynamics.total_power(), s.ne_residual);
    }
    Ok(())
}
