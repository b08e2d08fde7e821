pub mod batch;
pub mod centext;
pub mod field;
pub mod isomorph;
pub mod json;
pub mod liealg;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod simplicity;
pub mod units;
