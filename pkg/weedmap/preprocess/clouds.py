# clouds.py
# MIT License 2026
import logging
from typing import List, Sequence

from weedmap.core.records import SpectralObservation
from weedmap.exceptions import FractionOutOfRange

DEFAULT_CLOUD_THRESHOLD = 0.005

logger = logging.getLogger(__name__)


def filter_cloudy(obs_list: Sequence[SpectralObservation], threshold: float = DEFAULT_CLOUD_THRESHOLD) -> List[SpectralObservation]:
    """Remove the observations covered by too many clouds.

    Observations whose cloud fraction is strictly greater than the threshold are excluded,
    so an observation at exactly the threshold is retained. A warning is logged for every
    pixel that loses all of its observations.

    Args:
      * obs_list: Observations to filter.
      * threshold: Maximum cloud fraction of a retained observation.

    Returns: The retained observations, in their original order.

    Throws: `FractionOutOfRange` if the threshold is not in [0, 1].
    """
    if not 0 <= threshold <= 1:
        raise FractionOutOfRange(f"The cloud threshold must be in [0, 1], got {threshold}")
    kept = [obs for obs in obs_list if obs.cloud_fraction <= threshold]
    removed = len(obs_list) - len(kept)
    logger.info(f"Cloud filter (threshold {threshold}) removed {removed} of {len(obs_list)} observations")
    if removed > 0:
        clear_pixels = {obs.pixel_id for obs in kept}
        lost = sorted({obs.pixel_id for obs in obs_list} - clear_pixels)
        for pixel_id in lost:
            logger.warning(f"Pixel '{pixel_id}' has no observation left after cloud filtering")
    return kept
