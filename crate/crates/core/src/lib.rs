pub mod agreement;
pub mod corpus;
pub mod gam;
pub mod lexicon;
pub mod stats;
pub mod textproc;
pub mod validation;
