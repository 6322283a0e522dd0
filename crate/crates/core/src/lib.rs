pub mod exactlinalg;
pub mod oracle;
pub mod rootdata;
pub mod schubert;
pub mod weyl;
pub mod report;
pub mod survey;
