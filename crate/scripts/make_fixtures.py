"""Regenerate the PNG fixtures used by the `spe` integration tests.

Content photographs come from scikit-image's bundled sample data (public
domain / CC0). Stylized counterparts are produced outside the solver with a
painterly pipeline: Reinhard color transfer toward a style photograph, OpenCV
edge-preserving stylization, then a directional brush-stroke texture.
"""

import pathlib

import cv2
import numpy as np
from skimage import color, data

OUT = pathlib.Path(__file__).resolve().parents[1] / "crates" / "spe" / "tests" / "fixtures"

# name, content loader, style loader, (width, height)
TRIPLES = [
    ("astronaut", data.astronaut, data.coffee, (320, 320)),
    ("chelsea", data.chelsea, data.astronaut, (450, 300)),
    ("rocket", data.rocket, data.chelsea, (480, 320)),
    ("coffee", data.coffee, data.rocket, (640, 400)),
]


def reinhard(content, style):
    c = color.rgb2lab(content / 255.0)
    s = color.rgb2lab(style / 255.0)
    out = np.empty_like(c)
    for k in range(3):
        cm, cs = c[..., k].mean(), c[..., k].std() + 1e-6
        sm, ss = s[..., k].mean(), s[..., k].std()
        out[..., k] = (c[..., k] - cm) * (ss / cs) + sm
    rgb = np.clip(color.lab2rgb(out), 0.0, 1.0)
    return (rgb * 255.0 + 0.5).astype(np.uint8)


def strokes(shape, rng, angle_deg, length=15):
    noise = rng.standard_normal(shape[:2]).astype(np.float32)
    k = np.zeros((length, length), np.float32)
    k[length // 2, :] = 1.0 / length
    rot = cv2.getRotationMatrix2D((length / 2 - 0.5, length / 2 - 0.5), angle_deg, 1.0)
    k = cv2.warpAffine(k, rot, (length, length))
    k /= k.sum()
    tex = cv2.filter2D(noise, -1, k)
    return tex / (tex.std() + 1e-6)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20170101)
    for name, load_content, load_style, size in TRIPLES:
        content = cv2.resize(load_content()[..., :3], size, interpolation=cv2.INTER_AREA)
        style = load_style()[..., :3]
        sh, sw = style.shape[:2]
        scale = 240.0 / max(sh, sw)
        style = cv2.resize(style, (int(sw * scale), int(sh * scale)), interpolation=cv2.INTER_AREA)

        transferred = reinhard(content.astype(np.float64), style.astype(np.float64))
        painted = cv2.stylization(transferred[..., ::-1].copy(), sigma_s=60, sigma_r=0.45)[..., ::-1]
        tex = strokes(painted.shape, rng, rng.uniform(0, 180))
        stylized = painted.astype(np.float32) + 7.0 * tex[..., None]
        stylized = np.clip(stylized + 0.5, 0, 255).astype(np.uint8)

        for suffix, img in (("content", content), ("stylized", stylized), ("style", style)):
            cv2.imwrite(str(OUT / f"{name}_{suffix}.png"), img[..., ::-1])
        print(name, content.shape, stylized.shape, style.shape)


if __name__ == "__main__":
    main()
