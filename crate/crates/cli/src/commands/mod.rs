pub mod logprob;
pub mod project;
pub mod similarity;
pub mod study;
pub mod validate;

use crate::output::Output;

fn report_written(output: &Output) {
    for path in output.written() {
        println!("wrote {}", path.display());
    }
}
