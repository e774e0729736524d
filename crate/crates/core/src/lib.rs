pub mod cli;
pub mod covers;
pub mod criterion;
pub mod error;
pub mod instanton;
pub mod ledger;
pub mod linalg;
pub mod poly;
pub mod seifert;
