"""Regenerates munsell_soil_renotation.csv.

Chip chromaticities come from the Munsell renotation dataset (illuminant C,
2 degree observer) as interpolated by colour-science for the intermediate
chart chromas (1 and 3) used by the soil chart. Y is relative, with Y = 1
for the perfect diffuser under illuminant C.

    pip install colour-science
    python3 generate_renotation.py > munsell_soil_renotation.csv
"""
import warnings

import colour

warnings.filterwarnings("ignore")

PAGES = ["7.5R", "10R", "2.5YR", "5YR", "7.5YR", "10YR", "2.5Y", "5Y"]
LAYOUT = [(v, c) for v in (8, 7, 6, 5) for c in (1, 2, 3, 4, 6, 8)] + [
    (v, c) for v in (4, 3) for c in (1, 2, 3, 4, 6)
]
NEUTRAL_VALUES = (3, 4, 5, 6, 7, 8)

print("hue,value,chroma,x,y,Y")
for page in PAGES:
    for value, chroma in LAYOUT:
        x, y, Y = colour.munsell_colour_to_xyY(f"{page} {value}/{chroma}")
        print(f"{page},{value},{chroma},{x:.10f},{y:.10f},{Y:.10f}")
for value in NEUTRAL_VALUES:
    x, y, Y = colour.munsell_colour_to_xyY(f"N{value}")
    print(f"N,{value},0,{x:.10f},{y:.10f},{Y:.10f}")
