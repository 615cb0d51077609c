use std::path::Path;

use image::RgbImage;

use crate::color::SrgbColor;
use crate::error::{Error, Result};

/// Pixel rectangle, `x`/`y` being the top-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Region {
    pub x: u32,
    pub y: u32,
    pub width: u32,
    pub height: u32,
}

impl Region {
    /// The central half-by-half rectangle of a `width` × `height` raster.
    pub fn central(width: u32, height: u32) -> Region {
        let w = width.div_ceil(2);
        let h = height.div_ceil(2);
        Region {
            x: (width - w) / 2,
            y: (height - h) / 2,
            width: w,
            height: h,
        }
    }
}

/// A decoded 8-bit RGB raster and the region to sample.
#[derive(Debug, Clone)]
pub struct ImagePatch {
    raster: RgbImage,
    region: Region,
}

impl ImagePatch {
    pub fn new(raster: RgbImage, region: Region) -> Result<Self> {
        if region.width == 0 || region.height == 0 {
            return Err(Error::Domain("patch region is empty".into()));
        }
        let fits = |start: u32, len: u32, bound: u32| start.checked_add(len).is_some_and(|end| end <= bound);
        if !fits(region.x, region.width, raster.width()) || !fits(region.y, region.height, raster.height()) {
            return Err(Error::Domain(format!(
                "patch region {region:?} exceeds {}x{} raster",
                raster.width(),
                raster.height()
            )));
        }
        Ok(ImagePatch { raster, region })
    }

    /// Patch over the central 50% × 50% of the raster.
    pub fn central(raster: RgbImage) -> Result<Self> {
        let region = Region::central(raster.width(), raster.height());
        ImagePatch::new(raster, region)
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn raster(&self) -> &RgbImage {
        &self.raster
    }

    fn pixels(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        let r = self.region;
        (r.y..r.y + r.height)
            .flat_map(move |y| (r.x..r.x + r.width).map(move |x| self.raster.get_pixel(x, y).0))
    }
}

/// Per-channel statistic used to reduce a patch to one color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PatchStatistic {
    #[default]
    Mean,
    Median,
}

impl std::str::FromStr for PatchStatistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mean" => Ok(PatchStatistic::Mean),
            "median" => Ok(PatchStatistic::Median),
            other => Err(Error::Config(format!("unknown patch statistic {other:?}"))),
        }
    }
}

/// Reduces the patch to one color; means round half up.
pub fn extract_patch_color(patch: &ImagePatch, stat: PatchStatistic) -> SrgbColor {
    match stat {
        PatchStatistic::Mean => {
            let mut sums = [0u64; 3];
            let mut n = 0u64;
            for px in patch.pixels() {
                for (s, v) in sums.iter_mut().zip(px) {
                    *s += v as u64;
                }
                n += 1;
            }
            // floor(sum / n + 1/2) in integers
            SrgbColor::from(sums.map(|s| ((2 * s + n) / (2 * n)) as u8))
        }
        PatchStatistic::Median => {
            let mut hist = [[0u64; 256]; 3];
            let mut n = 0u64;
            for px in patch.pixels() {
                for (h, v) in hist.iter_mut().zip(px) {
                    h[v as usize] += 1;
                }
                n += 1;
            }
            SrgbColor::from(hist.map(|h| histogram_median(&h, n)))
        }
    }
}

fn histogram_median(hist: &[u64; 256], n: u64) -> u8 {
    let nth = |k: u64| -> u64 {
        let mut acc = 0;
        for (v, &count) in hist.iter().enumerate() {
            acc += count;
            if acc > k {
                return v as u64;
            }
        }
        255
    };
    if n % 2 == 1 {
        nth(n / 2) as u8
    } else {
        (nth(n / 2 - 1) + nth(n / 2)).div_ceil(2) as u8
    }
}

/// Decodes an image file into a central patch.
///
/// PNG is the expected format; JPEG is accepted with a warning because
/// decoders may differ by one code value.
pub fn load_image_patch(path: impl AsRef<Path>) -> Result<ImagePatch> {
    let path = path.as_ref();
    let img = image::ImageReader::open(path)
        .map_err(|e| Error::io(path, e))?
        .with_guessed_format()
        .map_err(|e| Error::io(path, e))?;
    if img.format() == Some(image::ImageFormat::Jpeg) {
        log::warn!("{}: JPEG decoding may shift channel values by ±1", path.display());
    }
    let raster = img
        .decode()
        .map_err(|source| Error::Image {
            path: path.to_path_buf(),
            source,
        })?
        .to_rgb8();
    ImagePatch::central(raster)
}

#[cfg(test)]
mod tests {
    use super::*;
    use image::Rgb;

    fn uniform(w: u32, h: u32, c: [u8; 3]) -> RgbImage {
        RgbImage::from_pixel(w, h, Rgb(c))
    }

    #[test]
    fn constant_field() {
        let p = ImagePatch::central(uniform(10, 8, [120, 80, 60])).unwrap();
        assert_eq!(extract_patch_color(&p, PatchStatistic::Mean), SrgbColor::new(120, 80, 60));
        assert_eq!(extract_patch_color(&p, PatchStatistic::Median), SrgbColor::new(120, 80, 60));
    }

    #[test]
    fn two_halves_average_exactly() {
        let img = RgbImage::from_fn(4, 2, |x, _| if x < 2 { Rgb([0, 0, 0]) } else { Rgb([2, 2, 2]) });
        let p = ImagePatch::new(img, Region { x: 0, y: 0, width: 4, height: 2 }).unwrap();
        assert_eq!(extract_patch_color(&p, PatchStatistic::Mean), SrgbColor::new(1, 1, 1));
    }

    #[test]
    fn checkerboard_rounds_half_up() {
        let img = RgbImage::from_fn(8, 8, |x, y| {
            if (x + y) % 2 == 0 {
                Rgb([0, 0, 0])
            } else {
                Rgb([255, 255, 255])
            }
        });
        let p = ImagePatch::central(img).unwrap();
        assert_eq!(extract_patch_color(&p, PatchStatistic::Mean), SrgbColor::new(128, 128, 128));
        assert_eq!(extract_patch_color(&p, PatchStatistic::Median), SrgbColor::new(128, 128, 128));
    }

    #[test]
    fn median_ignores_outliers() {
        let img = RgbImage::from_fn(3, 1, |x, _| if x == 2 { Rgb([255, 0, 0]) } else { Rgb([10, 10, 10]) });
        let p = ImagePatch::new(img, Region { x: 0, y: 0, width: 3, height: 1 }).unwrap();
        assert_eq!(extract_patch_color(&p, PatchStatistic::Median), SrgbColor::new(10, 10, 10));
    }

    #[test]
    fn central_region() {
        assert_eq!(Region::central(100, 60), Region { x: 25, y: 15, width: 50, height: 30 });
        assert_eq!(Region::central(1, 1), Region { x: 0, y: 0, width: 1, height: 1 });
        assert_eq!(Region::central(5, 3), Region { x: 1, y: 0, width: 3, height: 2 });
    }

    #[test]
    fn invalid_regions() {
        assert!(ImagePatch::new(uniform(4, 4, [0; 3]), Region { x: 0, y: 0, width: 0, height: 1 }).is_err());
        assert!(ImagePatch::new(uniform(4, 4, [0; 3]), Region { x: 2, y: 0, width: 3, height: 1 }).is_err());
        assert!(ImagePatch::new(uniform(4, 4, [0; 3]), Region { x: u32::MAX, y: 0, width: 3, height: 1 }).is_err());
    }

    #[test]
    fn corrupt_file_names_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("broken.png");
        std::fs::write(&path, b"not a png at all").unwrap();
        let err = load_image_patch(&path).unwrap_err();
        assert!(err.to_string().contains("broken.png"), "{err}");
        let err = load_image_patch(dir.path().join("absent.png")).unwrap_err();
        assert!(err.to_string().contains("absent.png"), "{err}");
    }
}
