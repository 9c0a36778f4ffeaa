//! Executable inequality certificates.
