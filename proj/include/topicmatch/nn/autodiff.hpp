// Copyright 2026 The topicmatch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "topicmatch/common.hpp"
#include "topicmatch/nn/kernels.hpp"
#include "topicmatch/nn/registry.hpp"
#include "topicmatch/nn/tensor.hpp"
#include "topicmatch/rng.hpp"

namespace topicmatch::nn {

// Reverse-mode tape. Nodes are appended in evaluation order, so creation
// order is a valid topological order and backward() is a reverse sweep.
// Parameter leaves reference registry storage directly and accumulate their
// gradients into an external buffer, which lets one buffer collect gradients
// across many single-pair tapes.
template <typename T>
class Tape {
 public:
  struct Var {
    int id = -1;
    bool valid() const { return id >= 0; }
  };

  explicit Tape(std::size_t reserve_nodes = 128) { nodes_.reserve(reserve_nodes); }

  // --- leaves ---

  Var input(Tensor<T> value) {
    Node n;
    n.val = std::move(value);
    n.needs_grad = false;
    return push(std::move(n));
  }

  Var param(const Tensor<T>* value, Tensor<T>* grad_sink) {
    Node n;
    n.vptr = value;
    n.gsink = grad_sink;
    n.grad = Tensor<T>(value->shape);
    return push(std::move(n));
  }

  const Tensor<T>& val(Var v) const {
    const Node& n = nodes_[v.id];
    return n.vptr ? *n.vptr : n.val;
  }

  Tensor<T>& grad(Var v) { return nodes_[v.id].grad; }

  // --- matrix ops ---

  Var matmul(Var a, Var b) {
    const auto& A = val(a);
    const auto& B = val(b);
    if (A.cols() != B.rows()) {
      throw DimensionError("matmul: inner dimensions disagree " + A.shape_str() +
                           " vs " + B.shape_str());
    }
    const std::size_t m = A.rows(), k = A.cols(), n = B.cols();
    Tensor<T> out(m, n);
    kernels::gemm(A.data(), B.data(), out.data(), m, n, k);
    Node node;
    node.val = std::move(out);
    node.back = [a, b, m, k, n](Tape& t, const Node& self) {
      const auto& A = t.val(a);
      const auto& B = t.val(b);
      // dA += dC * B^T ; dB += A^T * dC
      if (t.wants_grad(a)) {
        kernels::gemm(self.grad.data(), B.data(), t.grad(a).data(), m, k, n,
                      false, true, T(1));
      }
      if (t.wants_grad(b)) {
        kernels::gemm(A.data(), self.grad.data(), t.grad(b).data(), k, n, m,
                      true, false, T(1));
      }
    };
    return push(std::move(node));
  }

  // C = A * B^T for A [m x k], B [n x k]; used by attention scores.
  Var matmul_nt(Var a, Var b) {
    const auto& A = val(a);
    const auto& B = val(b);
    if (A.cols() != B.cols()) {
      throw DimensionError("matmul_nt: column dimensions disagree " + A.shape_str() +
                           " vs " + B.shape_str());
    }
    const std::size_t m = A.rows(), k = A.cols(), n = B.rows();
    Tensor<T> out(m, n);
    kernels::gemm(A.data(), B.data(), out.data(), m, n, k, false, true);
    Node node;
    node.val = std::move(out);
    node.back = [a, b, m, k, n](Tape& t, const Node& self) {
      const auto& A = t.val(a);
      const auto& B = t.val(b);
      // dA += dC * B ; dB += dC^T * A
      if (t.wants_grad(a)) {
        kernels::gemm(self.grad.data(), B.data(), t.grad(a).data(), m, k, n,
                      false, false, T(1));
      }
      if (t.wants_grad(b)) {
        kernels::gemm(self.grad.data(), A.data(), t.grad(b).data(), n, k, m,
                      true, false, T(1));
      }
    };
    return push(std::move(node));
  }

  Var add(Var a, Var b) {
    const auto& A = val(a);
    const auto& B = val(b);
    if (!A.same_shape(B)) {
      throw DimensionError("add: shape mismatch " + A.shape_str() + " vs " + B.shape_str());
    }
    Tensor<T> out(A.shape);
    for (std::size_t i = 0; i < out.numel(); ++i) out.v[i] = A.v[i] + B.v[i];
    Node node;
    node.val = std::move(out);
    node.back = [a, b](Tape& t, const Node& self) {
      t.axpy(a, self.grad);
      t.axpy(b, self.grad);
    };
    return push(std::move(node));
  }

  // Broadcast-add a [1 x c] vector to every row.
  Var add_rowvec(Var a, Var vec) {
    const auto& A = val(a);
    const auto& V = val(vec);
    if (V.rows() != 1 || V.cols() != A.cols()) {
      throw DimensionError("add_rowvec: want [1x" + std::to_string(A.cols()) +
                           "], got " + V.shape_str());
    }
    Tensor<T> out = A;
    kernels::add_row_vector(out.data(), V.data(), out.rows(), out.cols());
    Node node;
    node.val = std::move(out);
    node.back = [a, vec](Tape& t, const Node& self) {
      t.axpy(a, self.grad);
      if (t.wants_grad(vec)) {
        auto& gv = t.grad(vec);
        const std::size_t rows = self.grad.rows(), cols = self.grad.cols();
        for (std::size_t i = 0; i < rows; ++i) {
          for (std::size_t j = 0; j < cols; ++j) gv.v[j] += self.grad.v[i * cols + j];
        }
      }
    };
    return push(std::move(node));
  }

  Var sub(Var a, Var b) {
    const auto& A = val(a);
    const auto& B = val(b);
    if (!A.same_shape(B)) {
      throw DimensionError("sub: shape mismatch " + A.shape_str() + " vs " + B.shape_str());
    }
    Tensor<T> out(A.shape);
    for (std::size_t i = 0; i < out.numel(); ++i) out.v[i] = A.v[i] - B.v[i];
    Node node;
    node.val = std::move(out);
    node.back = [a, b](Tape& t, const Node& self) {
      t.axpy(a, self.grad);
      if (t.wants_grad(b)) {
        auto& gb = t.grad(b);
        for (std::size_t i = 0; i < gb.numel(); ++i) gb.v[i] -= self.grad.v[i];
      }
    };
    return push(std::move(node));
  }

  Var hadamard(Var a, Var b) {
    const auto& A = val(a);
    const auto& B = val(b);
    if (!A.same_shape(B)) {
      throw DimensionError("hadamard: shape mismatch " + A.shape_str() + " vs " +
                           B.shape_str());
    }
    Tensor<T> out(A.shape);
    for (std::size_t i = 0; i < out.numel(); ++i) out.v[i] = A.v[i] * B.v[i];
    Node node;
    node.val = std::move(out);
    node.back = [a, b](Tape& t, const Node& self) {
      const auto& A = t.val(a);
      const auto& B = t.val(b);
      if (t.wants_grad(a)) {
        auto& g = t.grad(a);
        for (std::size_t i = 0; i < g.numel(); ++i) g.v[i] += self.grad.v[i] * B.v[i];
      }
      if (t.wants_grad(b)) {
        auto& g = t.grad(b);
        for (std::size_t i = 0; i < g.numel(); ++i) g.v[i] += self.grad.v[i] * A.v[i];
      }
    };
    return push(std::move(node));
  }

  Var scale(Var a, T c) {
    Tensor<T> out = val(a);
    for (auto& x : out.v) x *= c;
    Node node;
    node.val = std::move(out);
    node.back = [a, c](Tape& t, const Node& self) {
      if (t.wants_grad(a)) {
        auto& g = t.grad(a);
        for (std::size_t i = 0; i < g.numel(); ++i) g.v[i] += c * self.grad.v[i];
      }
    };
    return push(std::move(node));
  }

  Var concat_cols(const std::vector<Var>& parts) {
    if (parts.empty()) throw DimensionError("concat_cols: empty");
    const std::size_t rows = val(parts[0]).rows();
    std::size_t cols = 0;
    for (Var p : parts) {
      if (val(p).rows() != rows) throw DimensionError("concat_cols: row mismatch");
      cols += val(p).cols();
    }
    Tensor<T> out(rows, cols);
    std::size_t off = 0;
    for (Var p : parts) {
      const auto& P = val(p);
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < P.cols(); ++j) out.v[i * cols + off + j] = P.at(i, j);
      }
      off += P.cols();
    }
    Node node;
    node.val = std::move(out);
    node.back = [parts, rows, cols](Tape& t, const Node& self) {
      std::size_t off = 0;
      for (Var p : parts) {
        const std::size_t pc = t.val(p).cols();
        if (t.wants_grad(p)) {
          auto& g = t.grad(p);
          for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < pc; ++j) {
              g.v[i * pc + j] += self.grad.v[i * cols + off + j];
            }
          }
        }
        off += pc;
      }
    };
    return push(std::move(node));
  }

  Var slice_cols(Var a, std::size_t c0, std::size_t c1) {
    const auto& A = val(a);
    if (c1 > A.cols() || c0 >= c1) throw DimensionError("slice_cols: bad range");
    const std::size_t rows = A.rows(), w = c1 - c0, cols = A.cols();
    Tensor<T> out(rows, w);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < w; ++j) out.v[i * w + j] = A.v[i * cols + c0 + j];
    }
    Node node;
    node.val = std::move(out);
    node.back = [a, c0, w, rows, cols](Tape& t, const Node& self) {
      if (t.wants_grad(a)) {
        auto& g = t.grad(a);
        for (std::size_t i = 0; i < rows; ++i) {
          for (std::size_t j = 0; j < w; ++j) g.v[i * cols + c0 + j] += self.grad.v[i * w + j];
        }
      }
    };
    return push(std::move(node));
  }

  Var row(Var a, std::size_t r) {
    const auto& A = val(a);
    if (r >= A.rows()) throw DimensionError("row: out of range");
    const std::size_t cols = A.cols();
    Tensor<T> out(1, cols);
    for (std::size_t j = 0; j < cols; ++j) out.v[j] = A.v[r * cols + j];
    Node node;
    node.val = std::move(out);
    node.back = [a, r, cols](Tape& t, const Node& self) {
      if (t.wants_grad(a)) {
        auto& g = t.grad(a);
        for (std::size_t j = 0; j < cols; ++j) g.v[r * cols + j] += self.grad.v[j];
      }
    };
    return push(std::move(node));
  }

  // Gather rows of an embedding table by id; backward scatter-adds.
  Var gather_rows(Var table, const std::vector<int>& ids) {
    const auto& Tb = val(table);
    const std::size_t cols = Tb.cols();
    Tensor<T> out(ids.size(), cols);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] < 0 || static_cast<std::size_t>(ids[i]) >= Tb.rows()) {
        throw DimensionError("gather_rows: id out of range");
      }
      for (std::size_t j = 0; j < cols; ++j) {
        out.v[i * cols + j] = Tb.v[static_cast<std::size_t>(ids[i]) * cols + j];
      }
    }
    Node node;
    node.val = std::move(out);
    node.back = [table, ids, cols](Tape& t, const Node& self) {
      if (t.wants_grad(table)) {
        auto& g = t.grad(table);
        for (std::size_t i = 0; i < ids.size(); ++i) {
          for (std::size_t j = 0; j < cols; ++j) {
            g.v[static_cast<std::size_t>(ids[i]) * cols + j] += self.grad.v[i * cols + j];
          }
        }
      }
    };
    return push(std::move(node));
  }

  // --- nonlinearities ---

  Var softmax_rows(Var a) {
    Tensor<T> out = val(a);
    if (out.cols() == 0) throw DimensionError("softmax_rows: empty rows");
    kernels::softmax_rows_serial(out.data(), out.rows(), out.cols());
    Node node;
    node.val = std::move(out);
    node.back = [a](Tape& t, const Node& self) {
      if (!t.wants_grad(a)) return;
      auto& g = t.grad(a);
      const auto& y = self.val;
      const std::size_t rows = y.rows(), cols = y.cols();
      for (std::size_t i = 0; i < rows; ++i) {
        T dot = T(0);
        for (std::size_t j = 0; j < cols; ++j) dot += self.grad.v[i * cols + j] * y.v[i * cols + j];
        for (std::size_t j = 0; j < cols; ++j) {
          g.v[i * cols + j] += y.v[i * cols + j] * (self.grad.v[i * cols + j] - dot);
        }
      }
    };
    return push(std::move(node));
  }

  Var layer_norm(Var a, Var gain, Var bias, T eps = T(1e-5)) {
    const auto& A = val(a);
    const auto& G = val(gain);
    const auto& B = val(bias);
    if (G.cols() != A.cols() || B.cols() != A.cols() || G.rows() != 1 || B.rows() != 1) {
      throw DimensionError("layer_norm: gain/bias must be [1x" +
                           std::to_string(A.cols()) + "]");
    }
    const std::size_t rows = A.rows(), cols = A.cols();
    Tensor<T> out(rows, cols);
    Node node;
    node.aux.resize(2 * rows);  // mean, rstd per row
    kernels::layer_norm_rows(A.data(), out.data(), G.data(), B.data(), rows, cols,
                             eps, node.aux.data(), node.aux.data() + rows);
    node.val = std::move(out);
    node.back = [a, gain, bias, rows, cols](Tape& t, const Node& self) {
      const auto& A = t.val(a);
      const auto& G = t.val(gain);
      const T* mean = self.aux.data();
      const T* rstd = self.aux.data() + rows;
      for (std::size_t i = 0; i < rows; ++i) {
        const T* dy = self.grad.data() + i * cols;
        const T* x = A.data() + i * cols;
        // xhat_j = (x_j - mean) * rstd
        if (t.wants_grad(gain)) {
          auto& gg = t.grad(gain);
          for (std::size_t j = 0; j < cols; ++j) {
            gg.v[j] += dy[j] * (x[j] - mean[i]) * rstd[i];
          }
        }
        if (t.wants_grad(bias)) {
          auto& gb = t.grad(bias);
          for (std::size_t j = 0; j < cols; ++j) gb.v[j] += dy[j];
        }
        if (t.wants_grad(a)) {
          auto& ga = t.grad(a);
          T sum_dyg = T(0), sum_dyg_xhat = T(0);
          for (std::size_t j = 0; j < cols; ++j) {
            const T dyg = dy[j] * G.v[j];
            const T xhat = (x[j] - mean[i]) * rstd[i];
            sum_dyg += dyg;
            sum_dyg_xhat += dyg * xhat;
          }
          const T inv_n = T(1) / static_cast<T>(cols);
          for (std::size_t j = 0; j < cols; ++j) {
            const T dyg = dy[j] * G.v[j];
            const T xhat = (x[j] - mean[i]) * rstd[i];
            ga.v[i * cols + j] +=
                rstd[i] * (dyg - inv_n * sum_dyg - xhat * inv_n * sum_dyg_xhat);
          }
        }
      }
    };
    return push(std::move(node));
  }

  Var gelu(Var a) {
    const auto& A = val(a);
    Tensor<T> out(A.shape);
    for (std::size_t i = 0; i < A.numel(); ++i) out.v[i] = kernels::gelu_scalar(A.v[i]);
    Node node;
    node.val = std::move(out);
    node.back = [a](Tape& t, const Node& self) {
      if (!t.wants_grad(a)) return;
      const auto& A = t.val(a);
      auto& g = t.grad(a);
      for (std::size_t i = 0; i < g.numel(); ++i) {
        g.v[i] += self.grad.v[i] * kernels::gelu_grad_scalar(A.v[i]);
      }
    };
    return push(std::move(node));
  }

  Var relu(Var a) {
    const auto& A = val(a);
    Tensor<T> out(A.shape);
    for (std::size_t i = 0; i < A.numel(); ++i) out.v[i] = A.v[i] > T(0) ? A.v[i] : T(0);
    Node node;
    node.val = std::move(out);
    node.back = [a](Tape& t, const Node& self) {
      if (!t.wants_grad(a)) return;
      const auto& A = t.val(a);
      auto& g = t.grad(a);
      for (std::size_t i = 0; i < g.numel(); ++i) {
        if (A.v[i] > T(0)) g.v[i] += self.grad.v[i];
      }
    };
    return push(std::move(node));
  }

  // Inverted dropout with a caller-seeded mask; call only in train mode.
  Var dropout(Var a, double rate, Rng& rng) {
    if (rate < 0.0 || rate >= 1.0) throw ConfigError("dropout rate must be in [0,1)");
    const auto& A = val(a);
    Tensor<T> out(A.shape);
    Node node;
    node.aux.resize(A.numel());
    const T keep_scale = static_cast<T>(1.0 / (1.0 - rate));
    for (std::size_t i = 0; i < A.numel(); ++i) {
      const T m = rng.uniform() < rate ? T(0) : keep_scale;
      node.aux[i] = m;
      out.v[i] = A.v[i] * m;
    }
    node.val = std::move(out);
    node.back = [a](Tape& t, const Node& self) {
      if (!t.wants_grad(a)) return;
      auto& g = t.grad(a);
      for (std::size_t i = 0; i < g.numel(); ++i) g.v[i] += self.grad.v[i] * self.aux[i];
    };
    return push(std::move(node));
  }

  // --- masked pooling ---

  Var masked_mean_rows(Var a, const std::vector<std::uint8_t>& mask) {
    const auto& A = val(a);
    check_mask(A, mask);
    const std::size_t rows = A.rows(), cols = A.cols();
    std::size_t count = 0;
    Tensor<T> out(1, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!mask[i]) continue;
      ++count;
      for (std::size_t j = 0; j < cols; ++j) out.v[j] += A.v[i * cols + j];
    }
    if (count == 0) throw DimensionError("masked_mean_rows: all positions masked");
    const T inv = T(1) / static_cast<T>(count);
    for (auto& x : out.v) x *= inv;
    Node node;
    node.val = std::move(out);
    node.back = [a, mask, inv, rows, cols](Tape& t, const Node& self) {
      if (!t.wants_grad(a)) return;
      auto& g = t.grad(a);
      for (std::size_t i = 0; i < rows; ++i) {
        if (!mask[i]) continue;
        for (std::size_t j = 0; j < cols; ++j) g.v[i * cols + j] += self.grad.v[j] * inv;
      }
    };
    return push(std::move(node));
  }

  Var masked_max_rows(Var a, const std::vector<std::uint8_t>& mask) {
    const auto& A = val(a);
    check_mask(A, mask);
    const std::size_t rows = A.rows(), cols = A.cols();
    Tensor<T> out(1, cols);
    std::vector<std::size_t> argmax(cols);
    bool any = false;
    for (std::size_t j = 0; j < cols; ++j) {
      bool first = true;
      for (std::size_t i = 0; i < rows; ++i) {
        if (!mask[i]) continue;
        any = true;
        const T x = A.v[i * cols + j];
        if (first || x > out.v[j]) {
          out.v[j] = x;
          argmax[j] = i;
          first = false;
        }
      }
    }
    if (!any) throw DimensionError("masked_max_rows: all positions masked");
    Node node;
    node.val = std::move(out);
    node.back = [a, argmax, cols](Tape& t, const Node& self) {
      if (!t.wants_grad(a)) return;
      auto& g = t.grad(a);
      for (std::size_t j = 0; j < cols; ++j) {
        g.v[argmax[j] * cols + j] += self.grad.v[j];
      }
    };
    return push(std::move(node));
  }

  // --- scalar reductions and losses (scalars are [1x1] tensors) ---

  Var sum_all(Var a) {
    const auto& A = val(a);
    Tensor<T> out(1, 1);
    for (T x : A.v) out.v[0] += x;
    Node node;
    node.val = std::move(out);
    node.back = [a](Tape& t, const Node& self) {
      if (!t.wants_grad(a)) return;
      auto& g = t.grad(a);
      for (auto& x : g.v) x += self.grad.v[0];
    };
    return push(std::move(node));
  }

  // Numerically stable binary cross entropy on a logit:
  //   bce(x, y) = max(x, 0) - x*y + log(1 + exp(-|x|))
  Var bce_with_logits(Var logit, T label) {
    const T x = scalar(logit);
    Tensor<T> out(1, 1);
    out.v[0] = std::max(x, T(0)) - x * label + std::log1p(std::exp(-std::abs(x)));
    Node node;
    node.val = std::move(out);
    node.back = [logit, label](Tape& t, const Node& self) {
      if (!t.wants_grad(logit)) return;
      const T x = t.scalar(logit);
      const T sig = T(1) / (T(1) + std::exp(-x));
      t.grad(logit).v[0] += self.grad.v[0] * (sig - label);
    };
    return push(std::move(node));
  }

  Var mse_to_label(Var pred, T label) {
    const T p = scalar(pred);
    Tensor<T> out(1, 1);
    out.v[0] = (p - label) * (p - label);
    Node node;
    node.val = std::move(out);
    node.back = [pred, label](Tape& t, const Node& self) {
      if (!t.wants_grad(pred)) return;
      const T p = t.scalar(pred);
      t.grad(pred).v[0] += self.grad.v[0] * T(2) * (p - label);
    };
    return push(std::move(node));
  }

  // Cosine similarity of two [1 x d] vectors.
  Var cosine(Var u, Var v) {
    const auto& U = val(u);
    const auto& V = val(v);
    if (!U.same_shape(V) || U.rows() != 1) {
      throw DimensionError("cosine: want matching [1xd] vectors");
    }
    T dot = T(0), nu = T(0), nv = T(0);
    for (std::size_t j = 0; j < U.numel(); ++j) {
      dot += U.v[j] * V.v[j];
      nu += U.v[j] * U.v[j];
      nv += V.v[j] * V.v[j];
    }
    if (nu == T(0) || nv == T(0)) throw NumericError("cosine: zero-norm embedding");
    const T inv_norms = T(1) / std::sqrt(nu * nv);
    Tensor<T> out(1, 1);
    out.v[0] = dot * inv_norms;
    Node node;
    node.val = std::move(out);
    node.back = [u, v, dot, nu, nv, inv_norms](Tape& t, const Node& self) {
      const auto& U = t.val(u);
      const auto& V = t.val(v);
      const T c = dot * inv_norms;
      const T go = self.grad.v[0];
      if (t.wants_grad(u)) {
        auto& g = t.grad(u);
        for (std::size_t j = 0; j < U.numel(); ++j) {
          g.v[j] += go * (V.v[j] * inv_norms - c * U.v[j] / nu);
        }
      }
      if (t.wants_grad(v)) {
        auto& g = t.grad(v);
        for (std::size_t j = 0; j < V.numel(); ++j) {
          g.v[j] += go * (U.v[j] * inv_norms - c * V.v[j] / nv);
        }
      }
    };
    return push(std::move(node));
  }

  T scalar(Var v) const {
    const auto& t = val(v);
    if (t.numel() != 1) throw DimensionError("scalar: expected [1x1], got " + t.shape_str());
    return t.v[0];
  }

  // Reverse sweep from `loss`; gradients of parameter leaves are added into
  // their grad sinks.
  void backward(Var loss) {
    if (val(loss).numel() != 1) throw DimensionError("backward: loss must be scalar");
    for (auto& n : nodes_) {
      if (n.needs_grad && !n.vptr) n.grad = Tensor<T>(n.val.shape);
      if (n.vptr) n.grad.zero();
    }
    nodes_[loss.id].grad.v[0] = T(1);
    for (int i = loss.id; i >= 0; --i) {
      const Node& n = nodes_[i];
      if (n.back) n.back(*this, n);
    }
    for (auto& n : nodes_) {
      if (n.gsink) {
        for (std::size_t j = 0; j < n.grad.numel(); ++j) n.gsink->v[j] += n.grad.v[j];
      }
    }
  }

  std::size_t num_nodes() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor<T> val;
    const Tensor<T>* vptr = nullptr;  // leaf view (params)
    Tensor<T> grad;
    Tensor<T>* gsink = nullptr;  // external gradient accumulator
    std::vector<T> aux;          // op scratch kept for backward
    std::function<void(Tape&, const Node&)> back;
    bool needs_grad = true;
  };

  Var push(Node n) {
    nodes_.push_back(std::move(n));
    return Var{static_cast<int>(nodes_.size()) - 1};
  }

  bool wants_grad(Var v) const { return nodes_[v.id].needs_grad; }

  void axpy(Var a, const Tensor<T>& src) {
    if (!wants_grad(a)) return;
    auto& g = grad(a);
    for (std::size_t i = 0; i < g.numel(); ++i) g.v[i] += src.v[i];
  }

  static void check_mask(const Tensor<T>& a, const std::vector<std::uint8_t>& mask) {
    if (mask.size() != a.rows()) throw DimensionError("mask length must equal row count");
  }

  std::vector<Node> nodes_;
};

}  // namespace topicmatch::nn
