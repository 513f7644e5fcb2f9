//! Bit-packed rasters for window solving: set algebra, morphology, run
//! iteration and box counting on square (or 1×N) pixel grids.

/// A width×height bitmap, one bit per pixel, rows packed into u64 words.
///
/// Bits beyond `width` in the last word of each row are kept at zero; the
/// shift-based morphology relies on that, and on zero carries at the row
/// ends, to treat everything outside the bitmap as unset.
#[derive(Clone, PartialEq, Eq)]
pub struct Bitmap {
    width: usize,
    height: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Bitmap {
    pub fn new(width: usize, height: usize) -> Self {
        let words_per_row = width.div_ceil(64);
        Bitmap {
            width,
            height,
            words_per_row,
            data: vec![0; words_per_row * height],
        }
    }

    pub fn filled(width: usize, height: usize) -> Self {
        let mut b = Bitmap::new(width, height);
        for w in b.data.iter_mut() {
            *w = u64::MAX;
        }
        b.mask_tail();
        b
    }

    fn mask_tail(&mut self) {
        let tail_bits = self.width % 64;
        if tail_bits == 0 {
            return;
        }
        let mask = (1u64 << tail_bits) - 1;
        for row in 0..self.height {
            self.data[row * self.words_per_row + self.words_per_row - 1] &= mask;
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.data[y * self.words_per_row + x / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize) {
        self.data[y * self.words_per_row + x / 64] |= 1 << (x % 64);
    }

    /// Set all pixels in the inclusive rectangle, clipped to the bitmap.
    pub fn set_rect(&mut self, x0: i64, x1: i64, y0: i64, y1: i64) {
        let x0c = x0.max(0) as usize;
        let y0c = y0.max(0) as usize;
        if x1 < x0c as i64 || y1 < y0c as i64 || x0c >= self.width || y0c >= self.height {
            return;
        }
        let x1c = (x1 as usize).min(self.width - 1);
        let y1c = (y1 as usize).min(self.height - 1);
        let first_word = x0c / 64;
        let last_word = x1c / 64;
        let lead_mask = u64::MAX << (x0c % 64);
        let trail_mask = u64::MAX >> (63 - x1c % 64);
        for y in y0c..=y1c {
            let base = y * self.words_per_row;
            if first_word == last_word {
                self.data[base + first_word] |= lead_mask & trail_mask;
            } else {
                self.data[base + first_word] |= lead_mask;
                for w in (first_word + 1)..last_word {
                    self.data[base + w] = u64::MAX;
                }
                self.data[base + last_word] |= trail_mask;
            }
        }
    }

    pub fn clear(&mut self) {
        self.data.iter_mut().for_each(|w| *w = 0);
    }

    pub fn count_ones(&self) -> u64 {
        self.data.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Visit every maximal horizontal run of set pixels as (y, x0, x1).
    pub fn for_each_run(&self, mut f: impl FnMut(usize, usize, usize)) {
        for y in 0..self.height {
            self.for_each_row_run(y, |x0, x1| f(y, x0, x1));
        }
    }

    fn shifted_row_or(&self, dst: &mut [u64], base: usize, dx: i64) {
        let src = &self.data[base..base + self.words_per_row];
        match dx {
            0 => {
                for (d, s) in dst.iter_mut().zip(src) {
                    *d |= s;
                }
            }
            1 => {
                let mut carry = 0u64;
                for (d, s) in dst.iter_mut().zip(src) {
                    *d |= (s << 1) | carry;
                    carry = s >> 63;
                }
            }
            -1 => {
                let mut carry = 0u64;
                for (d, s) in dst.iter_mut().zip(src).rev() {
                    *d |= (s >> 1) | carry;
                    carry = s << 63;
                }
            }
            _ => unreachable!(),
        }
    }

    fn shifted_row_and(&self, dst: &mut [u64], base: usize, dx: i64) {
        let src = &self.data[base..base + self.words_per_row];
        match dx {
            0 => {
                for (d, s) in dst.iter_mut().zip(src) {
                    *d &= s;
                }
            }
            1 => {
                let mut carry = 0u64;
                for (d, s) in dst.iter_mut().zip(src) {
                    *d &= (s << 1) | carry;
                    carry = s >> 63;
                }
            }
            -1 => {
                let mut carry = 0u64;
                for (d, s) in dst.iter_mut().zip(src).rev() {
                    *d &= (s >> 1) | carry;
                    carry = s << 63;
                }
            }
            _ => unreachable!(),
        }
    }

    /// Dilation by a (2k+1)-square structuring element (Chebyshev ball).
    pub fn dilate(&self, k: usize) -> Bitmap {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.dilate_one();
        }
        out
    }

    fn dilate_one(&self) -> Bitmap {
        let mut out = Bitmap::new(self.width, self.height);
        let wpr = self.words_per_row;
        for y in 0..self.height {
            let dst = &mut out.data[y * wpr..(y + 1) * wpr];
            for dy in -1i64..=1 {
                let sy = y as i64 + dy;
                if sy < 0 || sy >= self.height as i64 {
                    continue;
                }
                for dx in -1i64..=1 {
                    self.shifted_row_or(dst, sy as usize * wpr, dx);
                }
            }
        }
        out.mask_tail();
        out
    }

    /// Erosion by a (2k+1)-square; everything outside the bitmap counts as
    /// unset, so the border erodes.
    pub fn erode(&self, k: usize) -> Bitmap {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.erode_one();
        }
        out
    }

    fn erode_one(&self) -> Bitmap {
        let mut out = Bitmap::new(self.width, self.height);
        let wpr = self.words_per_row;
        for y in 0..self.height {
            let dst = &mut out.data[y * wpr..(y + 1) * wpr];
            dst.iter_mut().for_each(|w| *w = u64::MAX);
            let mut row_dead = false;
            for dy in -1i64..=1 {
                let sy = y as i64 + dy;
                if sy < 0 || sy >= self.height as i64 {
                    row_dead = self.height > 1;
                    continue;
                }
                for dx in -1i64..=1 {
                    self.shifted_row_and(dst, sy as usize * wpr, dx);
                }
            }
            if row_dead {
                dst.iter_mut().for_each(|w| *w = 0);
            }
        }
        out.mask_tail();
        out
    }

    pub fn and_not(&self, other: &Bitmap) -> Bitmap {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn or(&self, other: &Bitmap) -> Bitmap {
        self.zip_with(other, |a, b| a | b)
    }

    fn zip_with(&self, other: &Bitmap, op: impl Fn(u64, u64) -> u64) -> Bitmap {
        assert_eq!((self.width, self.height), (other.width, other.height));
        Bitmap {
            width: self.width,
            height: self.height,
            words_per_row: self.words_per_row,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Bitmap) -> bool {
        self.data.iter().zip(&other.data).all(|(a, b)| a & !b == 0)
    }

    /// Smallest k ≤ cap with self ⊆ dilate(other, k) and other ⊆
    /// dilate(self, k): the Hausdorff distance in Chebyshev pixels.
    pub fn hausdorff_distance(&self, other: &Bitmap, cap: usize) -> Option<usize> {
        let mut a = other.clone();
        let mut b = self.clone();
        for k in 0..=cap {
            if self.is_subset_of(&a) && other.is_subset_of(&b) {
                return Some(k);
            }
            a = a.dilate_one();
            b = b.dilate_one();
        }
        None
    }

    /// Number of scale×scale boxes (aligned to the origin) containing at
    /// least one set pixel.
    pub fn box_count(&self, scale: usize) -> u64 {
        assert!(scale >= 1);
        let boxes_x = self.width.div_ceil(scale);
        let mut hit = vec![false; boxes_x];
        let mut count = 0u64;
        let mut row = 0;
        while row < self.height {
            hit.iter_mut().for_each(|h| *h = false);
            let band_end = (row + scale).min(self.height);
            for y in row..band_end {
                self.for_each_row_run(y, |x0, x1| {
                    for bx in (x0 / scale)..=(x1 / scale) {
                        hit[bx] = true;
                    }
                });
            }
            count += hit.iter().filter(|&&h| h).count() as u64;
            row = band_end;
        }
        count
    }

    fn for_each_row_run(&self, y: usize, mut f: impl FnMut(usize, usize)) {
        let base = y * self.words_per_row;
        let mut run_start: Option<usize> = None;
        for wi in 0..self.words_per_row {
            let word = self.data[base + wi];
            let x_base = wi * 64;
            if word == 0 {
                if let Some(s) = run_start.take() {
                    f(s, x_base - 1);
                }
                continue;
            }
            if word == u64::MAX {
                if run_start.is_none() {
                    run_start = Some(x_base);
                }
                continue;
            }
            let mut bit = 0usize;
            while bit < 64 {
                let rest = word >> bit;
                if run_start.is_none() {
                    if rest == 0 {
                        break;
                    }
                    bit += rest.trailing_zeros() as usize;
                    run_start = Some(x_base + bit);
                } else {
                    let ones = rest.trailing_ones() as usize;
                    bit += ones;
                    if bit < 64 {
                        f(run_start.take().unwrap(), x_base + bit - 1);
                    }
                }
            }
        }
        if let Some(s) = run_start {
            f(s, self.width - 1);
        }
    }

    /// Downsample by an integer factor with OR pooling: a coarse pixel is
    /// set when any covered fine pixel is.
    pub fn downsample_or(&self, factor: usize) -> Bitmap {
        assert!(factor >= 1 && self.width % factor == 0);
        let height = if self.height == 1 {
            1
        } else {
            assert!(self.height % factor == 0);
            self.height / factor
        };
        let mut out = Bitmap::new(self.width / factor, height);
        self.for_each_run(|y, x0, x1| {
            let cy = if self.height == 1 { 0 } else { y / factor };
            out.set_rect(
                (x0 / factor) as i64,
                (x1 / factor) as i64,
                cy as i64,
                cy as i64,
            );
        });
        out
    }

    /// Translate by whole pixels; bits shifted outside are dropped.
    pub fn translated(&self, dx: i64, dy: i64) -> Bitmap {
        let mut out = Bitmap::new(self.width, self.height);
        self.for_each_run(|y, x0, x1| {
            let ny = y as i64 + dy;
            if ny < 0 || ny >= self.height as i64 {
                return;
            }
            out.set_rect(x0 as i64 + dx, x1 as i64 + dx, ny, ny);
        });
        out
    }
}

impl std::fmt::Debug for Bitmap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Bitmap({}x{}, {} set)",
            self.width,
            self.height,
            self.count_ones()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_and_count() {
        let mut b = Bitmap::new(200, 100);
        b.set_rect(10, 29, 5, 14);
        assert_eq!(b.count_ones(), 20 * 10);
        assert!(b.get(10, 5) && b.get(29, 14));
        assert!(!b.get(9, 5) && !b.get(30, 14) && !b.get(10, 15));
    }

    #[test]
    fn rect_clipping() {
        let mut b = Bitmap::new(64, 4);
        b.set_rect(-10, 100, -3, 7);
        assert_eq!(b.count_ones(), 64 * 4);
    }

    #[test]
    fn runs_roundtrip() {
        let mut b = Bitmap::new(300, 3);
        b.set_rect(0, 64, 0, 0);
        b.set_rect(100, 131, 0, 0);
        b.set_rect(299, 299, 1, 1);
        b.set_rect(63, 64, 2, 2);
        let mut runs = Vec::new();
        b.for_each_run(|y, x0, x1| runs.push((y, x0, x1)));
        assert_eq!(
            runs,
            vec![(0, 0, 64), (0, 100, 131), (1, 299, 299), (2, 63, 64)]
        );
    }

    #[test]
    fn erode_dilate_rectangle() {
        let mut b = Bitmap::new(128, 128);
        b.set_rect(20, 49, 30, 59);
        let e = b.erode(2);
        assert_eq!(e.count_ones(), 26 * 26);
        assert!(e.get(22, 32) && !e.get(21, 32));
        let d = b.dilate(3);
        assert_eq!(d.count_ones(), 36 * 36);
        assert!(d.get(17, 27) && !d.get(16, 27));
    }

    #[test]
    fn erosion_eats_the_border() {
        let b = Bitmap::filled(70, 9);
        let e = b.erode(1);
        assert_eq!(e.count_ones(), 68 * 7);
        assert!(!e.get(0, 4) && !e.get(69, 4) && e.get(1, 1));
    }

    #[test]
    fn hausdorff_of_translates() {
        let mut a = Bitmap::new(128, 128);
        a.set_rect(40, 59, 40, 59);
        let b = a.translated(3, -2);
        assert_eq!(a.hausdorff_distance(&b, 5), Some(3));
        assert_eq!(a.hausdorff_distance(&a, 2), Some(0));
        let far = a.translated(20, 0);
        assert_eq!(a.hausdorff_distance(&far, 4), None);
    }

    #[test]
    fn box_count_of_square_block() {
        let mut b = Bitmap::new(256, 256);
        b.set_rect(0, 127, 0, 127);
        assert_eq!(b.box_count(32), 16);
        assert_eq!(b.box_count(64), 4);
        assert_eq!(b.box_count(100), 4);
    }

    #[test]
    fn downsample_or_pooling() {
        let mut b = Bitmap::new(64, 64);
        b.set(13, 2);
        let c = b.downsample_or(4);
        assert_eq!(c.count_ones(), 1);
        assert!(c.get(3, 0));
    }

    #[test]
    fn one_dimensional_rows_work() {
        let mut b = Bitmap::new(4096, 1);
        b.set_rect(1000, 2999, 0, 0);
        assert_eq!(b.count_ones(), 2000);
        let e = b.erode(3);
        assert_eq!(e.count_ones(), 2000 - 6);
        let d = b.dilate(2).downsample_or(4);
        assert!(d.get(249, 0) && !d.get(248, 0));
    }
}
