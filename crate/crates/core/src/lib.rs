pub mod cli;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod qp;
pub mod quiver;
pub mod seed;
pub mod server;
pub mod session;
pub mod quantum;
pub mod tropical;
