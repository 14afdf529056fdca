// Generated by gen_gowdy_oracle.py; do not edit.
#pragma once

#include <cmath>

namespace oracle {

inline double euler_T1(double at, double ax, double bt, double bx, double tau, double S, double Sigma, double p) {
  return -2*S*ax - 2*S*bx - Sigma*at - at*tau - 2*bt*p - 2*bt*tau;
}

inline double euler_T2(double at, double ax, double bt, double bx, double tau, double S, double Sigma, double p) {
  return -2*S*at - 2*S*bt - Sigma*ax - 2*Sigma*bx - ax*tau + 2*bx*p;
}

namespace manufactured {

inline double a(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return (1.0/10.0)*sin(x)*cos(t);
}

inline double b(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return (1.0/10.0)*cos(t + x) + 1.0/5.0;
}

inline double c(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return -3.0/10.0*sin((1.0/2.0)*t - x);
}

inline double at(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return -1.0/10.0*sin(t)*sin(x);
}

inline double ax(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return (1.0/10.0)*cos(t)*cos(x);
}

inline double bt(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return -1.0/10.0*sin(t + x);
}

inline double bx(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return -1.0/10.0*sin(t + x);
}

inline double ct(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return -3.0/20.0*cos((1.0/2.0)*t - x);
}

inline double cx(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return (3.0/10.0)*cos((1.0/2.0)*t - x);
}

inline double mu(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return 1 + (1.0/5.0)*exp(-t)*cos(x);
}

inline double v(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return (3.0/10.0)*sin(t + x);
}

inline double tau(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return (1.0/5.0)*(-45*pow(cs, 2)*exp(t)*pow(sin(t + x), 2) - 9*pow(cs, 2)*pow(sin(t + x), 2)*cos(x) - 500*exp(t) - 100*cos(x))*exp(-t)/(9*pow(sin(t + x), 2) - 100);
}

inline double S(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return -6*(pow(cs, 2)*(5*exp(t) + cos(x)) + 5*exp(t) + cos(x))*exp(-t)*sin(t + x)/(9*pow(sin(t + x), 2) - 100);
}

inline double force_a(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return (1.0/2.0)*pow(cs, 2)*kappa*exp((1.0/5.0)*sin(x)*cos(t)) + (1.0/10.0)*pow(cs, 2)*kappa*exp(-t + (1.0/5.0)*sin(x)*cos(t))*cos(x) + (1.0/2.0)*kappa*exp((1.0/5.0)*sin(x)*cos(t)) + (1.0/10.0)*kappa*exp(-t + (1.0/5.0)*sin(x)*cos(t))*cos(x) - 27.0/400.0*pow(cos((1.0/2.0)*t - x), 2);
}

inline double force_b(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return (1.0/10.0)*kappa*(5*pow(cs, 2)*exp(t) + pow(cs, 2)*cos(x) - 5*exp(t) - cos(x))*exp(-t + (1.0/5.0)*sin(x)*cos(t));
}

inline double force_c(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return -9.0/40.0*sin((1.0/2.0)*t - x) + (9.0/100.0)*sin(t + x)*cos((1.0/2.0)*t - x);
}

inline double force_tau(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return (1.0/50.0)*(2*pow(cs, 2)*(-(5*exp(t) + cos(x))*sin(t + x) + 5*cos(x))*pow(9*pow(sin(t + x), 2) - 100, 2) + (9*pow(sin(t + x), 2) - 100)*(-(pow(cs, 2)*(5*exp(t) + cos(x))*(9*pow(sin(t + x), 2) - 100) - 9*(5*pow(cs, 2)*exp(t) + pow(cs, 2)*cos(x) + 5*exp(t) + cos(x))*pow(sin(t + x), 2))*sin(t)*sin(x) + (pow(cs, 2)*(5*exp(t) + cos(x))*(9*pow(sin(t + x), 2) - 100) + 100*pow(cs, 2)*(5*exp(t) + cos(x)) + 500*exp(t) + 100*cos(x))*sin(t)*sin(x) + 2*(pow(cs, 2)*(5*exp(t) + cos(x))*(9*pow(sin(t + x), 2) - 100) + 100*pow(cs, 2)*(5*exp(t) + cos(x)) + 500*exp(t) + 100*cos(x))*sin(t + x)) + 20*(9*pow(sin(t + x), 2) - 100)*(50*pow(cs, 2)*cos(x) + 3*(pow(cs, 2)*(5*exp(t) + cos(x)) + 5*exp(t) + cos(x))*pow(sin(t + x), 2) - 3*(pow(cs, 2)*(5*exp(t) + cos(x)) + 5*exp(t) + cos(x))*sin(t + x)*cos(t)*cos(x) + 50*cos(x)) + 18000*(pow(cs, 2)*(5*exp(t) + cos(x)) + 5*exp(t) + cos(x))*sin(t + x)*cos(t + x))*exp(-t)/pow(9*pow(sin(t + x), 2) - 100, 2);
}

inline double force_S(double t, double x, double kappa, double cs) {
  (void)kappa;
  (void)cs;
  return (1.0/50.0)*(2*pow(cs, 2)*(5*exp(t) + cos(x))*pow(9*pow(sin(t + x), 2) - 100, 2)*sin(t + x) + (9*pow(sin(t + x), 2) - 100)*(-2*(pow(cs, 2)*(5*exp(t) + cos(x))*(9*pow(sin(t + x), 2) - 100) - 9*(5*pow(cs, 2)*exp(t) + pow(cs, 2)*cos(x) + 5*exp(t) + cos(x))*pow(sin(t + x), 2))*sin(t + x) + (pow(cs, 2)*(5*exp(t) + cos(x))*(9*pow(sin(t + x), 2) - 100) - 9*(5*pow(cs, 2)*exp(t) + pow(cs, 2)*cos(x) + 5*exp(t) + cos(x))*pow(sin(t + x), 2))*cos(t)*cos(x) - (pow(cs, 2)*(5*exp(t) + cos(x))*(9*pow(sin(t + x), 2) - 100) + 100*pow(cs, 2)*(5*exp(t) + cos(x)) + 500*exp(t) + 100*cos(x))*cos(t)*cos(x)) + 60*(9*pow(sin(t + x), 2) - 100)*((5*pow(cs, 2) + 5)*sin(t + x)*cos(x) + (pow(cs, 2)*(5*exp(t) + cos(x)) + 5*exp(t) + cos(x))*sin(t)*sin(x)*sin(t + x) + (pow(cs, 2)*(5*exp(t) + cos(x)) + 5*exp(t) + cos(x))*pow(sin(t + x), 2) - 5*(pow(cs, 2)*(5*exp(t) + cos(x)) + 5*exp(t) + cos(x))*cos(t + x)) + 5400*(pow(cs, 2)*(5*exp(t) + cos(x)) + 5*exp(t) + cos(x))*pow(sin(t + x), 2)*cos(t + x))*exp(-t)/pow(9*pow(sin(t + x), 2) - 100, 2);
}

}  // namespace manufactured
}  // namespace oracle
