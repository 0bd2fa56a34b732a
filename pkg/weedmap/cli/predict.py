# predict.py
# MIT License 2026
import logging

import click

from weedmap.cli.utils import exit_on_error, install_logger, log_level_option
from weedmap.config import load_config
from weedmap.exceptions import MalformedInput, SchemaMismatch
from weedmap.io.observations import (read_observations, read_parcels,
                                     write_predictions)
from weedmap.learn.model import ModelArtifact, predict
from weedmap.learn.registry import load_learners
from weedmap.learn.serialization import load_model
from weedmap.pipeline import Preprocessing, featurize

logger = logging.getLogger(__name__)


def model_preprocessing(model: ModelArtifact) -> Preprocessing:
    """Get the preprocessing a model was trained with.

    Throws: `MalformedInput` if the model does not record it.
    """
    if "preprocessing" not in model.metadata:
        raise MalformedInput("The model does not record the preprocessing of its training data")
    try:
        return Preprocessing.from_dict(model.metadata["preprocessing"])
    except (KeyError, TypeError, ValueError) as error:
        raise MalformedInput(f"Invalid preprocessing recorded in the model: {error}")


@click.command()
@click.argument("model_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("observations", type=click.Path(exists=True, dir_okay=False))
@click.argument("parcels", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=str, required=True, help="CSV file where the predictions are written")
@click.option("-c", "--config", type=click.Path(exists=True, dir_okay=False), default=None, help="Configuration file declaring the custom learners of the model")
@log_level_option
@exit_on_error
def cmd_predict(model_file, observations, parcels, output, config, log_level):
    """Predict the weed management practice of the parcels listed in PARCELS.

    The observations in OBSERVATIONS are preprocessed the way the training data of the model in
    MODEL_FILE was, and the parcels do not need to be labeled.
    """
    install_logger(log_level)
    learners = load_learners(load_config(config).learners) if config is not None else None
    model = load_model(model_file, learners)
    prep = model_preprocessing(model)
    sensor, obs = read_observations(observations)
    if sensor.id != prep.sensor:
        raise SchemaMismatch(f"The model was trained on {prep.sensor.value} features, the observations come from {sensor.id.value}")
    records = read_parcels(parcels, obs)
    vectors = featurize(obs, records, prep)
    predictions = predict(model, vectors)
    write_predictions(output, [(v.parcel_id, label) for v, label in zip(vectors, predictions)])
