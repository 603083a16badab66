//! Kinematics and inverse dynamics of the 3-PRP planar parallel robot.
//!
//! Three identical legs (actuated prismatic, revolute, prismatic) carry a
//! triangular platform in a vertical plane. For a prescribed platform motion
//! the crate computes joint strokes, rates and accelerations, the three
//! actuator forces and powers, and the force in every revolute joint.
//!
//! Forces come from a recursive virtual-work formulation ([`dynamics`]). The
//! [`oracle`] module recomputes them with a dense Newton–Euler free-body solve
//! and checks energy balance, without sharing code with the recursive path.
//!
//! ```
//! use prp3::{dynamics::solve_instant, kinematics::PlatformState, model::standard_params};
//!
//! let params = standard_params();
//! let pose = PlatformState { yd: 0.02, ..PlatformState::at_rest(0.0, 0.01, 0.05) };
//! let sol = solve_instant(&params, &pose).unwrap();
//! for (leg, f) in sol.dynamics.legs.iter().enumerate() {
//!     println!("leg {leg}: f10 = {:.3} N, p10 = {:.4} W", f.f10, f.p10);
//! }
//! ```

pub mod dynamics;
pub mod error;
pub mod kinematics;
pub mod model;
pub mod opcount;
pub mod oracle;
pub mod sim;
pub mod smallmat;

pub use error::{Error, Result};
