#ifndef BORSUK_TESTS_TABLE2_DATA_HPP
#define BORSUK_TESTS_TABLE2_DATA_HPP

#include <array>

// Reference optima: p, -lambda, k/n, t0/n, c(p).
struct Table2Row {
    double p;
    double minus_lambda;
    double kappa;
    double tau;
    double c;
};

inline constexpr std::array<Table2Row, 32> kTable2 = {{
    {1.00, 0.5000, 0.5000, 0.2500, 1.2032},
    {2.00, 0.5000, 0.5000, 0.2500, 1.2032},
    {2.25, 0.4639, 0.4777, 0.2287, 1.2034},
    {2.30, 0.4472, 0.4666, 0.2189, 1.2037},
    {2.35, 0.4310, 0.4554, 0.2095, 1.2042},
    {2.40, 0.4163, 0.4448, 0.2012, 1.2049},
    {2.45, 0.4031, 0.4348, 0.1938, 1.2059},
    {2.50, 0.3915, 0.4255, 0.1874, 1.2071},
    {2.75, 0.3521, 0.3895, 0.1665, 1.2151},
    {3.00, 0.3317, 0.3656, 0.1562, 1.2249},
    {3.25, 0.3207, 0.3491, 0.1510, 1.2348},
    {3.50, 0.3146, 0.3372, 0.1483, 1.2441},
    {3.75, 0.3112, 0.3283, 0.1468, 1.2526},
    {4.00, 0.3095, 0.3215, 0.1460, 1.2601},
    {4.25, 0.3087, 0.3162, 0.1456, 1.2667},
    {4.50, 0.3085, 0.3120, 0.1455, 1.2724},
    {4.75, 0.3087, 0.3087, 0.1455, 1.2773},
    {5.00, 0.3091, 0.3060, 0.1455, 1.2815},
    {5.25, 0.3097, 0.3038, 0.1456, 1.2851},
    {5.50, 0.3104, 0.3020, 0.1457, 1.2881},
    {5.75, 0.3110, 0.3005, 0.1458, 1.2907},
    {6.00, 0.3118, 0.2993, 0.1459, 1.2929},
    {6.25, 0.3125, 0.2982, 0.1459, 1.2948},
    {6.50, 0.3132, 0.2974, 0.1460, 1.2964},
    {6.75, 0.3138, 0.2967, 0.1461, 1.2977},
    {7.00, 0.3145, 0.2961, 0.1462, 1.2989},
    {7.50, 0.3157, 0.2951, 0.1462, 1.3006},
    {8.00, 0.3168, 0.2945, 0.1463, 1.3019},
    {8.50, 0.3179, 0.2940, 0.1463, 1.3028},
    {9.00, 0.3188, 0.2937, 0.1464, 1.3034},
    {9.50, 0.3196, 0.2935, 0.1464, 1.3038},
    {9.99, 0.3203, 0.2933, 0.1464, 1.3042},
}};

#endif
