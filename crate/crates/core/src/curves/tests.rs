// tests in tests.rs
