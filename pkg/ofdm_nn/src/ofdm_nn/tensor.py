#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Dense double-precision tensor with reverse-mode differentiation

Every operation on tensors that require gradients records its parents and a
closure that propagates the output gradient to them. backward() walks the graph
in reverse topological order.
"""

import numpy as np

from ofdm_common.exceptions import ShapeError


def _unbroadcast(grad, shape):
    """
    Sum a broadcast gradient back to the operand shape
    """
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, extent in enumerate(shape):
        if extent == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _is_basic_index(index):
    if not isinstance(index, tuple):
        index = (index,)
    return all(isinstance(i, (slice, int, np.integer)) or i is Ellipsis or i is None
               for i in index)


def as_tensor(value):
    if isinstance(value, Tensor):
        return value
    return Tensor(value)


class Tensor(object):

    """
    Node of the computation graph

    :param data: values, converted to float64
    :param requires_grad: track gradients for this tensor
    :param name: optional parameter name
    """

    __array_priority__ = 100

    def __init__(self, data, requires_grad=False, name=None, _parents=(), _op=""):
        self.data = np.asarray(data, dtype=np.float64)
        self.requires_grad = bool(requires_grad)
        self.grad = None
        self.name = name
        self._parents = tuple(_parents)
        self._backward = None
        self._op = _op

    def __repr__(self):
        return "Tensor(shape={}, op='{}', name={})".format(self.shape, self._op, self.name)

    @property
    def shape(self):
        return self.data.shape

    @property
    def ndim(self):
        return self.data.ndim

    @property
    def size(self):
        return self.data.size

    def numpy(self):
        return self.data

    def item(self):
        if self.data.size != 1:
            raise ShapeError("item() needs a single element, got shape {}".format(self.shape))
        return float(self.data.reshape(-1)[0])

    def zero_grad(self):
        self.grad = None

    def detach(self):
        return Tensor(self.data)

    def accumulate_grad(self, grad):
        if not self.requires_grad:
            return
        if grad.shape != self.data.shape:
            grad = _unbroadcast(grad, self.data.shape)
        if self.grad is None:
            self.grad = np.array(grad, dtype=np.float64)
        else:
            self.grad = self.grad + grad

    @classmethod
    def make_result(cls, data, parents, op, backward):
        """
        Create the output node of an operation, wiring backward only when needed
        """
        requires_grad = any(p.requires_grad for p in parents)
        out = cls(data, requires_grad=requires_grad, _parents=parents if requires_grad else (),
                  _op=op)
        if requires_grad:
            out._backward = lambda: backward(out.grad)
        return out

    def _topological_order(self):
        order = []
        visited = set()
        stack = [(self, False)]
        while stack:
            node, processed = stack.pop()
            if processed:
                order.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for parent in node._parents:
                if id(parent) not in visited:
                    stack.append((parent, False))
        return order

    def backward(self, grad=None):
        """
        Propagate gradients from this scalar to every tensor requiring them

        :raises ShapeError: when called on a non-scalar without an explicit grad
        """
        if grad is None:
            if self.data.size != 1:
                raise ShapeError("backward() needs a scalar loss, got shape {}".format(self.shape))
            grad = np.ones_like(self.data)
        if not self.requires_grad:
            return
        order = self._topological_order()
        for node in order:
            if node._parents:
                node.grad = None
        self.accumulate_grad(np.asarray(grad, dtype=np.float64))
        for node in reversed(order):
            if node._backward is not None and node.grad is not None:
                node._backward()

    # arithmetic

    def __add__(self, other):
        other = as_tensor(other)

        def backward(grad):
            self.accumulate_grad(grad)
            other.accumulate_grad(grad)
        return Tensor.make_result(self.data + other.data, (self, other), "add", backward)

    __radd__ = __add__

    def __neg__(self):
        def backward(grad):
            self.accumulate_grad(-grad)
        return Tensor.make_result(-self.data, (self,), "neg", backward)

    def __sub__(self, other):
        return self + (-as_tensor(other))

    def __rsub__(self, other):
        return as_tensor(other) + (-self)

    def __mul__(self, other):
        other = as_tensor(other)

        def backward(grad):
            self.accumulate_grad(grad * other.data)
            other.accumulate_grad(grad * self.data)
        return Tensor.make_result(self.data * other.data, (self, other), "mul", backward)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_tensor(other)

        def backward(grad):
            self.accumulate_grad(grad / other.data)
            other.accumulate_grad(-grad * self.data / (other.data ** 2))
        return Tensor.make_result(self.data / other.data, (self, other), "div", backward)

    def __matmul__(self, other):
        other = as_tensor(other)
        if self.ndim < 2 or other.ndim < 2 or self.shape[-1] != other.shape[-2]:
            raise ShapeError("matmul shape mismatch: {} @ {}".format(self.shape, other.shape))

        def backward(grad):
            self.accumulate_grad(np.matmul(grad, np.swapaxes(other.data, -1, -2)))
            other.accumulate_grad(np.matmul(np.swapaxes(self.data, -1, -2), grad))
        return Tensor.make_result(np.matmul(self.data, other.data), (self, other), "matmul",
                                  backward)

    def __getitem__(self, index):
        basic = _is_basic_index(index)

        def backward(grad):
            full = np.zeros_like(self.data)
            if basic:
                full[index] += grad
            else:
                np.add.at(full, index, grad)
            self.accumulate_grad(full)
        return Tensor.make_result(self.data[index], (self,), "getitem", backward)

    # shape manipulation

    def reshape(self, *shape):
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])

        def backward(grad):
            self.accumulate_grad(grad.reshape(self.shape))
        return Tensor.make_result(self.data.reshape(shape), (self,), "reshape", backward)

    def swapaxes(self, axis1, axis2):
        def backward(grad):
            self.accumulate_grad(np.swapaxes(grad, axis1, axis2))
        return Tensor.make_result(np.swapaxes(self.data, axis1, axis2), (self,), "swapaxes",
                                  backward)

    def moveaxis(self, source, destination):
        def backward(grad):
            self.accumulate_grad(np.moveaxis(grad, destination, source))
        return Tensor.make_result(np.moveaxis(self.data, source, destination), (self,),
                                  "moveaxis", backward)

    # reductions and elementwise functions

    def sum(self, axis=None, keepdims=False):
        def backward(grad):
            if axis is not None and not keepdims:
                grad = np.expand_dims(grad, axis)
            self.accumulate_grad(np.broadcast_to(grad, self.shape).copy())
        return Tensor.make_result(self.data.sum(axis=axis, keepdims=keepdims), (self,), "sum",
                                  backward)

    def mean(self, axis=None, keepdims=False):
        count = self.data.size if axis is None else np.prod(
            [self.shape[a] for a in np.atleast_1d(axis)])
        return self.sum(axis=axis, keepdims=keepdims) * (1.0 / count)

    def exp(self):
        value = np.exp(self.data)

        def backward(grad):
            self.accumulate_grad(grad * value)
        return Tensor.make_result(value, (self,), "exp", backward)

    def tanh(self):
        value = np.tanh(self.data)

        def backward(grad):
            self.accumulate_grad(grad * (1.0 - value ** 2))
        return Tensor.make_result(value, (self,), "tanh", backward)

    def square(self):
        def backward(grad):
            self.accumulate_grad(2.0 * grad * self.data)
        return Tensor.make_result(self.data ** 2, (self,), "square", backward)


def concatenate(tensors, axis=0):
    """
    Concatenate tensors along an existing axis
    """
    tensors = [as_tensor(t) for t in tensors]
    extents = [t.shape[axis] for t in tensors]
    offsets = np.cumsum([0] + extents)

    def backward(grad):
        for tensor, start, stop in zip(tensors, offsets[:-1], offsets[1:]):
            index = [slice(None)] * grad.ndim
            index[axis] = slice(start, stop)
            tensor.accumulate_grad(grad[tuple(index)])
    return Tensor.make_result(np.concatenate([t.data for t in tensors], axis=axis),
                              tuple(tensors), "concatenate", backward)


def stack(tensors, axis=0):
    tensors = [as_tensor(t) for t in tensors]

    def backward(grad):
        for i, tensor in enumerate(tensors):
            tensor.accumulate_grad(np.take(grad, i, axis=axis))
    return Tensor.make_result(np.stack([t.data for t in tensors], axis=axis), tuple(tensors),
                              "stack", backward)
