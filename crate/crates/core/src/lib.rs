pub mod alphabet;
pub mod automata;
pub mod chen;
pub mod diffring;
pub mod expr;
pub mod hopf;
pub mod linalg;
pub mod ring;
pub mod series;
