#include "cli.hpp"

int main(int argc, char** argv) {
    return charges::cli::run({argv + 1, argv + argc});
}
