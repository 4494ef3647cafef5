//! E-series and mixed series for punctured surfaces.
//!
//! Usage: `character_series [nonorientable|orientable] [r or g] [mu]`

use charstack::partitions::MultiPartition;
use charstack::series::{eseries, mixed_series, SurfaceSpec};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind = args.first().map(String::as_str).unwrap_or("nonorientable");
    let genus: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let mu: MultiPartition = args.get(2).map(String::as_str).unwrap_or("(2)").parse().unwrap();
    let surface = match kind {
        "orientable" => SurfaceSpec::orientable(genus, mu.k()),
        _ => SurfaceSpec::nonorientable(genus, mu.k()),
    }
    .unwrap();

    let e = eseries(&surface, &mu).unwrap();
    print!("{}", e.to_text());
    let m = mixed_series(&surface, &mu).unwrap();
    print!("{}", m.to_text());
}
