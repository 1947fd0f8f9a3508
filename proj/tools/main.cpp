#include "isoform/cli.hpp"

int main(int argc, char** argv) { return isoform::run(argc, argv); }
