#pragma once

// Central differences with one Richardson halving: O(h^4) truncation.
namespace mamass::fd {

template <class F>
auto richardson(const F& f, double h) {
  // Concrete type: Eigen expressions must not outlive the temporaries they reference.
  using T = decltype(f(h));
  const T d1 = (f(h) - f(-h)) * (1.0 / (2.0 * h));
  const T d2 = (f(0.5 * h) - f(-0.5 * h)) * (1.0 / h);
  return T((d2 * 4.0 - d1) * (1.0 / 3.0));
}

}  // namespace mamass::fd
