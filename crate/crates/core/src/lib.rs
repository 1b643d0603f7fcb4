pub mod poly;
pub mod ideal;
pub mod f3;
pub mod cover;
pub mod coverfile;
