fn main() {
    use pianovis_core::*;
    let w = 24u32; let h = 16u32; let step_at = 12u32;
    let mut v = Vec::new();
    for _y in 0..h { for x in 0..w { v.push(if x >= step_at {255} else {0}); } }
    let img = GrayImage::new(w, h, v).unwrap();
    let m = canny(&img, 1.0, 100.0, 300.0).unwrap();
    for y in 0..h {
        let mut row = String::new();
        for x in 0..w { row.push(if m.get(x,y) {'#'} else {'.'}); }
        println!("{row}");
    }
}
