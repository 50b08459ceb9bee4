//! Successor rings for a few radii, drawn around their center.
//!
//!     cargo run --example circle_offsets [radius...]

use elian::geometry::circle_offsets;

fn main() {
    let radii: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let radii = if radii.is_empty() {
        vec![2, 4, 8]
    } else {
        radii
    };
    for r in radii {
        let ring = circle_offsets(r);
        println!("r = {r}: {} cells", ring.len());
        let n = r as i32;
        for drow in -n..=n {
            let line: String = (-n..=n)
                .map(|dcol| {
                    if dcol == 0 && drow == 0 {
                        'x'
                    } else if ring.iter().any(|o| o.dcol == dcol && o.drow == drow) {
                        '#'
                    } else {
                        '.'
                    }
                })
                .collect();
            println!("  {line}");
        }
    }
}
