#include "primo/cli.hpp"

int main(int argc, char** argv) { return primo::cli::run(argc, argv); }
