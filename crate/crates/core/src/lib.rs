pub mod exactnum;
pub mod graded;
pub mod forms;
pub mod chen;
pub mod fixtures;
pub mod ainfty;
pub mod locsys;
pub mod random;
pub mod report;
pub mod sample;
