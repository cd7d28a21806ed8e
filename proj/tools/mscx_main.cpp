#include <vector>

#include "mscx/cli.hpp"

int main(int argc, char** argv) {
    return mscx::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
