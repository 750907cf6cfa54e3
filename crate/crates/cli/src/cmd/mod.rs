pub mod bounds;
pub mod gen;
pub mod run;
pub mod verify;
