mod common;

#[test]
fn batch_errors_halt_at_the_offending_line() {
    if let Err(e) = common::criteria::error_behaviour() {
        panic!("{e}");
    }
}
