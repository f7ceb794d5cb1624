pub mod asym;
pub mod cardinal;
pub mod cli;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod presented;
pub mod tree;
pub mod treelike;
