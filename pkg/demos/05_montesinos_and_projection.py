"""Spherical Montesinos classification, and drawing a link projection.

A Montesinos link built from rational tangles has a Seifert fibered
double branched cover; when the base orbifold is spherical and the
Euler number of the fibration is nonzero, that cover is a spherical
manifold and the link complement is virtually fibered.  The projection
demo writes an SVG of a five-component link: stereographic projection
from a pole on the z-axis circle, w-axis circle dotted, under-strands
broken at crossings.
"""

from gclink import MontesinosLink, classify, construct_dpq, montesinos_verdict
from gclink.projection import render_projection, scene_linking_sums, scene_to_svg

for tangles, e0 in [((("1/2", "1/3", "2/5")), 0),
                    ((("1/2", "1/3", "1/7")), 0),
                    ((("1/2", "1/2")), -1),
                    ((("2/5",)), 0)]:
    link = MontesinosLink.parse(tangles, e0=e0)
    cls = classify(link)
    v = montesinos_verdict(link)
    print(f"{link}")
    print(f"  base {cls.base}, Euler number {cls.euler_number}"
          f" -> {cls.geometry_verdict.value}, verdict {v.status.value}")

link = construct_dpq(2, 5)
scene = render_projection(link, samples=400)
svg = scene_to_svg(scene)
out = "d2_5_projection.svg"
with open(out, "w", encoding="utf-8") as fh:
    fh.write(svg)
print(f"\nwrote {out}: {len(scene.curves)} closed curves, {len(scene.crossings)} crossings")
print("half the signed crossing counts reproduce the linking matrix:")
print(scene_linking_sums(scene, len(scene.curves)).astype(int))
