//! Sparse multipath channels on a uniform linear array.
//!
//! Every user sees `S` paths. All antennas share each path's delay and angle
//! of departure (spatial common sparsity), so across the array a path is a
//! steering vector scaled by its complex gain.

mod config;
mod matrix;
mod params;
mod response;

pub use config::{GainMode, SystemConfig, SPEED_OF_LIGHT};
pub use matrix::{build_channel_matrix, gaussian_baseline, ChannelMatrix};
pub use params::{sample_user_params, UserChannelParams};
pub use response::{freq_response_row, freq_response_row_direct, per_antenna_delay, per_antenna_gain};
