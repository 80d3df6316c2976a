"""Cluster counting: N_X(ρ) over one vertical period of layer representatives."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from ..core.geometry import SplitVector
from ..core.models import ClassReport, PointModel, RepresentativeModel, WitnessModel
from ..core.rational import RadiusSq, radius_sq_to_str
from ..engel.construct import EngelParams, layer_origin
from .equivalence import IsometryWitness, clusters_equivalent, compose_witnesses, invert_witness
from .extract import Cluster, cluster_around

logger = logging.getLogger(__name__)

Representative = tuple[int, SplitVector]


def layer_representatives(params: EngelParams) -> list[Representative]:
    """One center per layer over a vertical period: the origins of layers 0..2P-1."""
    return [(m, layer_origin(params, m)) for m in range(2 * params.seq.period)]


@dataclass
class Classification:
    """Partition of clusters into equivalence classes.

    Classes are ordered by their smallest member key (layer, then center), and
    witnesses map each class's first member onto every other member.
    """

    class_ids: list[int]
    classes: list[list[int]]
    witnesses: dict[tuple[int, int], IsometryWitness] = field(default_factory=dict)

    @property
    def n_classes(self) -> int:
        return len(self.classes)


def classify_clusters(
    clusters: Sequence[Cluster], keys: Sequence[tuple[object, ...]] | None = None
) -> Classification:
    """Group clusters by equivalence, testing each against one member per class."""
    if keys is None:
        # Clusters without a layer sort after every layered one.
        keys = [
            (c.center_layer is None, c.center_layer or 0, c.center.horiz, c.center.vlevel)
            for c in clusters
        ]

    # anchor index -> {member index: witness anchor -> member}
    groups: list[tuple[int, dict[int, IsometryWitness | None]]] = []
    for i, cluster in enumerate(clusters):
        for anchor, members in groups:
            witness = clusters_equivalent(clusters[anchor], cluster)
            if witness is not None:
                members[i] = witness
                break
        else:
            groups.append((i, {i: None}))

    ordered = sorted(groups, key=lambda g: min(keys[i] for i in g[1]))
    class_ids = [0] * len(clusters)
    classes = []
    witnesses: dict[tuple[int, int], IsometryWitness] = {}
    for cid, (anchor, members) in enumerate(ordered):
        canonical = min(members, key=lambda i: keys[i])
        to_canonical = members[canonical]
        for i in sorted(members):
            class_ids[i] = cid
            if i == canonical:
                continue
            if canonical == anchor:
                witness = members[i]
            elif i == anchor:
                assert to_canonical is not None
                witness = invert_witness(to_canonical)
            else:
                assert to_canonical is not None
                witness = compose_witnesses(invert_witness(to_canonical), members[i])
            assert witness is not None
            witnesses[(canonical, i)] = witness
        classes.append(sorted(members))
    return Classification(class_ids, classes, witnesses)


def count_classes(
    params: EngelParams,
    rho_sq: RadiusSq,
    representatives: Sequence[Representative] | None = None,
    padding: int = 0,
    max_points: int | None = None,
) -> ClassReport:
    """N_X(ρ): the number of equivalence classes among representative ρ-clusters.

    Exact for periodic sequences, where every cluster of the set is equivalent
    to one of the representatives' clusters.
    """
    reps = list(representatives) if representatives is not None else layer_representatives(params)
    clusters = [
        cluster_around(params, m, rho_sq, center, padding=padding, max_points=max_points)
        for m, center in reps
    ]
    keys = [(m, center.horiz, center.vlevel) for m, center in reps]
    result = classify_clusters(clusters, keys)
    logger.info(
        f"ρ²={radius_sq_to_str(rho_sq)}: {result.n_classes} classes over {len(reps)} "
        f"representatives (cluster sizes {sorted({c.size for c in clusters})})"
    )

    return ClassReport(
        rho_sq=radius_sq_to_str(rho_sq),
        representatives=[
            RepresentativeModel(layer=m, center=PointModel(horiz=list(c.horiz), vlevel=c.vlevel))
            for m, c in reps
        ],
        class_ids=result.class_ids,
        classes=result.classes,
        witnesses=[
            WitnessModel(
                source=src,
                target=dst,
                matrix=w.map.to_strings() if w.map is not None else None,
            )
            for (src, dst), w in sorted(result.witnesses.items())
        ],
        n_classes=result.n_classes,
    )
