// placeholder, filled in once the simulation kernels exist
fn main() {}
