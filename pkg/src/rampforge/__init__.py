"""rampforge: design-mined color ramp models.

Train curve models on a corpus of designer-crafted ramps, then generate new
sequential and diverging ramps from a single seed color, with affine editing
and gamut-revert semantics.
"""

from .colorspace import (
    LabColor,
    SRGBColor,
    delta_e,
    format_hex,
    in_gamut,
    lab_to_srgb,
    parse_hex,
    srgb_to_lab,
)
from .corpus import Corpus, corpus_stats, parse_corpus
from .curve import (
    AffineEdit,
    RampCurve,
    RampKind,
    RampSource,
    RawRamp,
    align_cluster,
    apply_edit,
    curve_length,
    fit_and_resample,
)
from .generator import (
    GeneratedRamp,
    apply_user_edit,
    gamut_fit,
    linear_ramp,
    sample_ramp,
    seed_diverging,
    seed_sequential,
)
from .modelbook import (
    ModelBook,
    RampModel,
    TrainingConfig,
    build_modelbook,
    load_modelbook,
    save_modelbook,
    train,
)

__version__ = "0.1.0"
