# -*- coding:utf-8 -*-
import logging
from dataclasses import dataclass, asdict

import numpy as np
import tensorflow as tf

from src.network.MLP_net import MLPNet
from src.utils.artifact import encode_array, decode_array
from src.utils.errors import ConfigError, DataError
from src.utils.policies import threshold_scores

__all__ = ['MLPParams', 'MLPClassifier', 'mlp_gradient', 'mlp_loss']

logger = logging.getLogger(__name__)

_deterministic_ops = False


def _seed_everything(seed):
    global _deterministic_ops
    tf.keras.utils.set_random_seed(seed)
    if not _deterministic_ops:
        tf.config.experimental.enable_op_determinism()
        _deterministic_ops = True


@dataclass
class MLPParams:
    hidden: int = 100
    activation: str = 'relu'
    max_epochs: int = 200
    batch: int = 200
    learning_rate: float = 1e-3
    tol: float = 1e-4
    patience: int = 10  # epochs without a `tol` improvement before stopping
    optimizer: str = 'adam'
    seed: int = 0

    def validate(self):
        if not isinstance(self.hidden, int) or self.hidden < 1:
            raise ConfigError('hidden must be an integer >= 1')
        if self.optimizer not in ('adam', 'sgd'):
            raise ConfigError("optimizer must be 'adam' or 'sgd'")
        if self.max_epochs < 1 or self.batch < 1 or self.learning_rate <= 0:
            raise ConfigError('max_epochs, batch and learning_rate must be positive')
        return self


class MLPClassifier:
    """
    single-hidden-layer perceptron trained on mean cross-entropy
    """
    boundary = 0.0

    def __init__(self, params=None):
        self.params = (params or MLPParams()).validate()
        self.net = None
        self.model = None
        self.loss_history = []

    def build(self, input_dim):
        _seed_everything(self.params.seed)
        self.net = MLPNet(config=self.params, input_dim=input_dim)
        self.model = self.net.nn_model()
        return self

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[0] == 0:
            raise DataError('cannot fit an MLP on an empty dataset')
        targets = np.asarray(y, dtype=np.float64).reshape(-1, 1)
        self.build(X.shape[1])

        stop = tf.keras.callbacks.EarlyStopping(monitor='loss', min_delta=self.params.tol,
                                                patience=self.params.patience)
        history = self.model.fit(x=X, y=targets,
                                 batch_size=min(self.params.batch, X.shape[0]),
                                 epochs=self.params.max_epochs,
                                 shuffle=True,
                                 verbose=0,
                                 callbacks=[stop])
        self.loss_history = [float(v) for v in history.history['loss']]
        logger.info('MLP trained for %d epochs, final loss %.5f', len(self.loss_history), self.loss_history[-1])
        return self

    def decision_scores(self, X):
        """attack logit"""
        X = tf.convert_to_tensor(np.asarray(X, dtype=np.float64))
        return self.model(X, training=False).numpy().ravel()

    def predict(self, X):
        return threshold_scores(self.decision_scores(X), self.boundary)

    def get_weights(self):
        return [np.array(w) for w in self.model.get_weights()]

    def set_weights(self, weights):
        self.model.set_weights([np.asarray(w, dtype=np.float64) for w in weights])

    def to_state(self):
        return {'params': asdict(self.params), 'input_dim': int(self.net.input_dim),
                'weights': [encode_array(w) for w in self.get_weights()]}

    @classmethod
    def from_state(cls, state):
        model = cls(MLPParams(**state['params'])).build(state['input_dim'])
        model.set_weights([decode_array(w) for w in state['weights']])
        return model


def mlp_loss(m, X, y):
    """mean cross-entropy of the network on a batch"""
    X = tf.convert_to_tensor(np.asarray(X, dtype=np.float64))
    targets = tf.convert_to_tensor(np.asarray(y, dtype=np.float64).reshape(-1, 1))
    return float(m.net.loss(targets, m.model(X, training=False)).numpy())


def mlp_gradient(m, X, y):
    """
    analytic gradient of the mean cross-entropy w.r.t. every weight and bias,
    in get_weights() order (hidden kernel, hidden bias, output kernel, output bias)
    """
    X = np.asarray(X, dtype=np.float64)
    if X.shape[0] == 0:
        raise DataError('gradient of an empty batch')
    inputs = tf.convert_to_tensor(X)
    targets = tf.convert_to_tensor(np.asarray(y, dtype=np.float64).reshape(-1, 1))
    with tf.GradientTape() as tape:
        loss = m.net.loss(targets, m.model(inputs, training=True))
    gradients = tape.gradient(loss, m.model.trainable_variables)
    return [g.numpy() for g in gradients]
