# -*- coding:utf-8 -*-
import logging

import tensorflow as tf
from tensorflow.keras.layers import Input, Dense

__all__ = ['MLPNet', 'binary_cross_entropy']

logger = logging.getLogger(__name__)


def binary_cross_entropy(y_true, logits):
    """mean sigmoid cross-entropy of a batch of attack logits, computed in float64"""
    logits = tf.cast(logits, tf.float64)
    labels = tf.reshape(tf.cast(y_true, tf.float64), tf.shape(logits))
    return tf.reduce_mean(tf.nn.sigmoid_cross_entropy_with_logits(labels=labels, logits=logits))


class MLPNet:
    """
    one hidden layer of rectifier units and a single logit output;
    float64 throughout so analytic gradients can be checked against finite differences
    """

    def __init__(self, config, input_dim):
        self.config = config
        self.input_dim = input_dim
        self.net_model = None

        if config.optimizer == 'adam':
            self.optimizer = tf.keras.optimizers.Adam(learning_rate=config.learning_rate)
        else:
            self.optimizer = tf.keras.optimizers.SGD(learning_rate=config.learning_rate)
        self.loss = binary_cross_entropy

    def nn_model(self):
        input_layer = Input(shape=(self.input_dim,), dtype='float64', name='flow_features_input')
        hidden = Dense(units=self.config.hidden,
                       activation=self.config.activation,
                       kernel_initializer=tf.keras.initializers.GlorotUniform(seed=self.config.seed),
                       dtype='float64',
                       name='hidden_layer')(input_layer)
        # attack logit; sigmoid lives in the loss
        output_layer = Dense(units=1,
                             activation='linear',
                             kernel_initializer=tf.keras.initializers.GlorotUniform(seed=self.config.seed + 1),
                             dtype='float64',
                             name='attack_logit')(hidden)

        self.net_model = tf.keras.models.Model(
            inputs=[input_layer],
            outputs=[output_layer]
        )

        # mean binary cross-entropy over the batch
        self.net_model.compile(
            loss=self.loss,
            optimizer=self.optimizer
        )
        logger.debug('built MLP %d -> %d -> 1', self.input_dim, self.config.hidden)

        return self.net_model
