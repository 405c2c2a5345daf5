// Prints, as CSV, the Gronwall ratio I(n) / (e^gamma ln ln n) over the
// superabundant numbers up to a limit (default 10^12), for external plotting.

#include "abundancy/abundancy.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv)
{
    using namespace abundancy;
    const mpz_class limit = argc > 1 ? parse_integer(argv[1]) : mpz_class("1000000000000");
    std::cout << "n,index,gronwall_ratio,robin\n";
    for (const auto& rec : superabundant_structured(limit)) {
        if (rec.n < 3) continue;
        const BoundInterval ratio = gronwall_ratio(rec.factorization, 20);
        const RobinReport robin = robin_check(rec.factorization, 20);
        std::cout << rec.n << ',' << rec.index.to_decimal(6) << ',' << ratio.midpoint_decimal(8) << ','
                  << to_string(robin.verdict) << '\n';
    }
}
