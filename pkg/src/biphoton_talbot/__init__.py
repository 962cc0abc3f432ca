"""Second-order Talbot self-imaging with entangled photon pairs.

Fourier-series models of the two-photon coincidence amplitude in the ghost
imaging and lithography arrangements, a direct Fresnel-quadrature oracle for
cross-checking them, and carpet generation over detector scans.
"""

from ._validation import DegenerateGeometryError, DomainError, QuadratureResolutionError
from .carpet import (
    Carpet,
    CarpetMode,
    ScanSpec,
    dominant_frequency,
    evaluate_grid,
    fundamental_frequency,
    generate_carpet,
    row_sharpness,
    transverse_profile,
)
from .imaging import (
    ImagingGeometry,
    PlaneInfo,
    PlaneKind,
    ScanMode,
    coincidence_rate,
    correlation_amplitude,
    effective_distance,
    localization_factors,
    magnification,
    self_image_planes,
    singles_rate,
)
from .io import write_csv, write_pgm
from .lithography import (
    LithoGeometry,
    litho_coincidence_rate,
    litho_correlation_amplitude,
    litho_revival_planes,
)
from .optics import (
    ParaxialWarning,
    PeriodicObject,
    PhotonPair,
    classical_talbot_length,
    evaluate_object,
    imaging_talbot_length,
    litho_talbot_length,
    paraxial_max_order,
    rect_grating,
)
from .oracle import (
    WindowedObject,
    classical_propagate,
    imaging_oracle,
    litho_oracle,
    singles_oracle,
)

__version__ = "0.1.0"
